#include <doctest.h>

#include "superapprox/polyalg.hpp"
#include "superapprox/rng.hpp"

using namespace superapprox;

namespace {

RationalPolynomial random_rational(int dim, int degree, std::uint64_t seed) {
  Rng rng(seed);
  RationalPolynomial p(dim);
  for (const auto& a : indices_up_to(dim, degree)) {
    const int num = static_cast<int>(rng.uniform() * 19.0) - 9;
    const int den = 1 + static_cast<int>(rng.uniform() * 5.0);
    p.add_term(a, Rational(num, den));
  }
  return p;
}

RationalPolynomial poly(int dim, std::initializer_list<std::pair<MultiIndex, Rational>> terms) {
  RationalPolynomial p(dim);
  for (const auto& [a, c] : terms) p.add_term(a, c);
  return p;
}

}  // namespace

TEST_SUITE("polyalg") {
  TEST_CASE("multi-index order and arithmetic") {
    MultiIndex a{2, 1};
    CHECK(a.order() == 3);
    CHECK(a.dim() == 2);
    CHECK(a.factorial() == 2.0);
    CHECK(a.dominates(MultiIndex{1, 1}));
    CHECK_FALSE(a.dominates(MultiIndex{0, 2}));
    CHECK((a + MultiIndex{0, 2}) == MultiIndex{2, 3});
    CHECK((a - MultiIndex{1, 0}) == MultiIndex{1, 1});
    CHECK_THROWS_AS(MultiIndex({-1, 0}), std::invalid_argument);
    CHECK_THROWS(a - MultiIndex{3, 0});
  }

  TEST_CASE("graded-lex ordering") {
    const auto idx = indices_up_to(2, 2);
    REQUIRE(idx.size() == 6);
    CHECK(idx[0] == MultiIndex{0, 0});
    CHECK(idx[1] == MultiIndex{1, 0});
    CHECK(idx[2] == MultiIndex{0, 1});
    CHECK(idx[3] == MultiIndex{2, 0});
    CHECK(idx[4] == MultiIndex{1, 1});
    CHECK(idx[5] == MultiIndex{0, 2});
    CHECK(indices_of_order(3, 2).size() == 6);
    CHECK(indices_up_to(3, 3).size() == 20);
  }

  TEST_CASE("vee and wedge") {
    CHECK(vee(2, -1) == 2);
    CHECK(wedge(2, -1) == -1);
  }

  TEST_CASE("binomial") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(9, 0) == 1);
    CHECK(binomial(7, 3) == 35);
    CHECK_THROWS_AS(binomial(3, 4), std::invalid_argument);
    CHECK(factorial(5) == 120);
  }

  TEST_CASE("derive examples") {
    const auto x2y = poly(2, {{MultiIndex{2, 1}, 1}});
    CHECK(derive(x2y, MultiIndex{1, 0}) == poly(2, {{MultiIndex{1, 1}, 2}}));
    CHECK(derive(x2y, MultiIndex{0, 2}).is_zero());
    const auto cubic = poly(1, {{MultiIndex{3}, 3}, {MultiIndex{1}, 1}});
    CHECK(derive(cubic, MultiIndex{2}) == poly(1, {{MultiIndex{1}, 18}}));
    CHECK_THROWS_AS(derive(cubic, MultiIndex{1, 0}), std::invalid_argument);
  }

  TEST_CASE("multiply examples") {
    const auto x = RationalPolynomial::variable(1, 0);
    const auto one = RationalPolynomial::constant(1, 1);
    CHECK(multiply(x + one, x - one) == poly(1, {{MultiIndex{2}, 1}, {MultiIndex{0}, -1}}));
    CHECK(multiply(x, one) == x);
    const auto s = RationalPolynomial::variable(2, 0) + RationalPolynomial::variable(2, 1);
    CHECK(multiply(s, s) == poly(2, {{MultiIndex{2, 0}, 1}, {MultiIndex{1, 1}, 2}, {MultiIndex{0, 2}, 1}}));
    CHECK(multiply(s, s).degree() == 2);
    CHECK_THROWS_AS(multiply(x, s), std::invalid_argument);
  }

  TEST_CASE("canonical form drops zeros") {
    auto p = RationalPolynomial::variable(2, 1);
    p -= RationalPolynomial::variable(2, 1);
    CHECK(p.is_zero());
    CHECK(p.degree() == -1);
    CHECK(p.terms().empty());
    CHECK_THROWS_AS(RationalPolynomial(0), std::invalid_argument);
  }

  TEST_CASE("derivatives commute") {
    for (int dim = 1; dim <= 3; ++dim) {
      const auto p = random_rational(dim, 5, 11 + static_cast<std::uint64_t>(dim));
      for (const auto& a : indices_up_to(dim, 2))
        for (const auto& b : indices_up_to(dim, 2)) CHECK(derive(derive(p, a), b) == derive(p, a + b));
    }
  }

  TEST_CASE("multiplication is commutative and associative") {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto p = random_rational(2, 3, 100 + s);
      const auto q = random_rational(2, 2, 200 + s);
      const auto r = random_rational(2, 2, 300 + s);
      CHECK(multiply(p, q) == multiply(q, p));
      CHECK(multiply(multiply(p, q), r) == multiply(p, multiply(q, r)));
      CHECK(multiply(p, q).degree() == p.degree() + q.degree());
    }
  }

  TEST_CASE("Leibniz rule") {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto p = random_rational(2, 3, 400 + s);
      const auto q = random_rational(2, 3, 500 + s);
      for (int i = 0; i < 2; ++i) {
        const auto e = MultiIndex::unit(2, i);
        CHECK(derive(multiply(p, q), e) == multiply(derive(p, e), q) + multiply(p, derive(q, e)));
      }
    }
  }

  TEST_CASE("power and evaluation") {
    const auto x = RationalPolynomial::variable(1, 0) + RationalPolynomial::constant(1, 1);
    const auto p = power(x, 3);
    const double at[] = {0.5};
    CHECK(p(at) == doctest::Approx(3.375).epsilon(1e-15));
    CHECK(power(x, 0) == RationalPolynomial::constant(1, 1));
    CHECK_THROWS_AS(power(x, -1), std::invalid_argument);
  }

  TEST_CASE("exact to double conversion") {
    const auto p = poly(1, {{MultiIndex{1}, Rational(1, 3)}});
    const RealPolynomial d = to_double(p);
    CHECK(d.coefficient(MultiIndex{1}) == 1.0 / 3.0);
  }

  TEST_CASE("affine composition and Taylor coefficients") {
    RealPolynomial p(2);
    p.add_term(MultiIndex{2, 0}, 1.0);
    p.add_term(MultiIndex{0, 1}, 3.0);
    const double shift[] = {1.0, -1.0};
    const auto q = compose_affine(p, 0.5, shift);
    const double xh[] = {0.4, 0.2};
    const double xp[] = {1.0 + 0.5 * 0.4, -1.0 + 0.5 * 0.2};
    CHECK(q(xh) == doctest::Approx(p(xp)).epsilon(1e-14));

    const double at[] = {2.0, 5.0};
    const auto t = taylor_coefficients(p, at, 2);
    REQUIRE(t.size() == 6);
    CHECK(t[0] == doctest::Approx(19.0));
    CHECK(t[1] == doctest::Approx(4.0));
    CHECK(t[2] == doctest::Approx(3.0));
    CHECK(t[3] == doctest::Approx(1.0));
    CHECK(t[4] == 0.0);
    CHECK(t[5] == 0.0);
  }

  TEST_CASE("JSON round trip") {
    const auto p = poly(2, {{MultiIndex{1, 0}, Rational(3, 4)}, {MultiIndex{0, 2}, -2}});
    const auto j = to_json(p);
    CHECK(j["dim"] == 2);
    CHECK(j["terms"][0]["coef"] == "3/4");
    CHECK(rational_polynomial_from_json(j) == p);
    const auto r = real_polynomial_from_json(j);
    CHECK(r.coefficient(MultiIndex{1, 0}) == 0.75);
    CHECK(to_json(r)["terms"][1]["coef"] == -2.0);
    CHECK_THROWS(rational_polynomial_from_json(nlohmann::json{{"dim", 2}, {"terms", {{{"alpha", {1}}, {"coef", 1}}}}}));
  }
}
