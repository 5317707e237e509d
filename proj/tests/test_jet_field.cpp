#include <cmath>

#include <doctest.h>

#include "superapprox/field.hpp"
#include "superapprox/geometry.hpp"
#include "superapprox/jet.hpp"
#include "superapprox/rng.hpp"

using namespace superapprox;

namespace {

RealPolynomial random_real(int dim, int degree, std::uint64_t seed) {
  Rng rng(seed);
  RealPolynomial p(dim);
  for (const auto& a : indices_up_to(dim, degree)) p.add_term(a, rng.normal());
  return p;
}

}  // namespace

TEST_SUITE("jet") {
  TEST_CASE("layout is graded-lex with level offsets") {
    const auto& L = jet_layout(2, 3);
    CHECK(L.size() == 10);
    REQUIRE(L.level_begin.size() == 5);
    CHECK(L.level_begin[2] == 3);
    CHECK(L.index_of(MultiIndex{1, 1}) == 4);
    CHECK_THROWS(L.index_of(MultiIndex{3, 1}));
    CHECK_THROWS_AS(jet_layout(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(jet_layout(1, kMaxJetOrder + 1), std::invalid_argument);
  }

  TEST_CASE("product matches polynomial multiplication") {
    const auto p = random_real(2, 3, 1);
    const auto q = random_real(2, 2, 2);
    const double x[] = {0.3, -0.7};
    PolynomialField fp(p), fq(q), fpq(multiply(p, q));
    const Jet prod = fp.jet(x, 6) * fq.jet(x, 6);
    const Jet ref = fpq.jet(x, 6);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(prod[i] == doctest::Approx(ref[i]).epsilon(1e-12).scale(1.0));
  }

  TEST_CASE("truncation consistency") {
    SinusoidField f({1.3, 0.9}, {0.4, 0.7});
    const double x[] = {0.2, 0.6};
    for (int J = 1; J <= 8; ++J) CHECK(f.jet(x, J).truncated(J - 1) == f.jet(x, J - 1));
    CHECK_THROWS(f.jet(x, 2).truncated(3));
  }

  TEST_CASE("power and scaling") {
    const double x[] = {0.5};
    PolynomialField f(RealPolynomial::variable(1, 0));
    const Jet j = f.jet(x, 4).pow(3);
    CHECK(j.value() == doctest::Approx(0.125));
    CHECK(j.derivative(MultiIndex{1}) == doctest::Approx(0.75));
    CHECK(j.derivative(MultiIndex{3}) == doctest::Approx(6.0));
    CHECK(j.derivative(MultiIndex{4}) == 0.0);
    const Jet s = j.scaled(2.0);
    CHECK(s.derivative(MultiIndex{1}) == doctest::Approx(1.5));
    CHECK(s.derivative(MultiIndex{3}) == doctest::Approx(48.0));
    CHECK_THROWS(j.pow(-1));
  }

  TEST_CASE("tensor product jet") {
    // sin(x) * cos(y) at 0
    std::vector<std::vector<double>> f{{0.0, 1.0, 0.0, -1.0 / 6.0}, {1.0, 0.0, -0.5, 0.0}};
    const Jet j = tensor_product_jet(f, 3);
    CHECK(j.coefficient(MultiIndex{1, 0}) == doctest::Approx(1.0));
    CHECK(j.coefficient(MultiIndex{1, 2}) == doctest::Approx(-0.5));
    CHECK(j.coefficient(MultiIndex{3, 0}) == doctest::Approx(-1.0 / 6.0));
    CHECK(j.coefficient(MultiIndex{0, 2}) == 0.0);
  }
}

TEST_SUITE("field") {
  TEST_CASE("sinusoid jets are closed-form derivatives") {
    SinusoidField f({1.3}, {0.4});
    const double x[] = {0.25};
    const Jet j = f.jet(x, 4);
    const double t = 1.3 * 0.25 + 0.4;
    CHECK(j.value() == doctest::Approx(std::sin(t)).epsilon(1e-14));
    CHECK(j.derivative(MultiIndex{1}) == doctest::Approx(1.3 * std::cos(t)).epsilon(1e-14));
    CHECK(j.derivative(MultiIndex{2}) == doctest::Approx(-1.69 * std::sin(t)).epsilon(1e-14));
  }

  TEST_CASE("local polynomial field pulls back through its frame") {
    const auto p = random_real(2, 3, 5);
    const Frame fr{{0.5, 0.25}, 0.125};
    LocalPolynomialField f(p, fr);
    const double xl[] = {0.3, 0.4};
    const Point x = fr.to_physical(xl);
    const Jet local = PolynomialField(p).jet(xl, 3);
    const Jet phys = f.jet(x, 3);
    for (std::size_t i = 0; i < phys.size(); ++i) {
      const int r = phys.layout().indices[i].order();
      CHECK(phys[i] == doctest::Approx(local[i] * std::pow(8.0, r)).epsilon(1e-12));
    }
  }

  TEST_CASE("combinators") {
    auto a = make_polynomial_field(RealPolynomial::variable(1, 0));
    auto c = make_constant_field(1, 2.0);
    const double x[] = {3.0};
    CHECK(difference(a, c)->value(x) == 1.0);
    CHECK(shifted(a, 1.5)->value(x) == 4.5);
    CHECK(scaled(a, -2.0)->value(x) == -6.0);
    CHECK(product({{a, 2}, {c, 1}})->value(x) == 18.0);
    CHECK(product({{a, 2}})->jet(x, 2).derivative(MultiIndex{2}) == doctest::Approx(2.0));
  }
}

TEST_SUITE("geometry") {
  TEST_CASE("reference cells") {
    const Cell t = reference_cell(CellKind::simplex, 2);
    CHECK(t.vertices.size() == 3);
    CHECK(t.diameter == doctest::Approx(std::sqrt(2.0)));
    CHECK(t.volume() == doctest::Approx(0.5));
    const Cell q = reference_cell(CellKind::box, 2);
    CHECK(q.vertices.size() == 4);
    CHECK(q.volume() == doctest::Approx(1.0));
    CHECK(reference_cell(CellKind::simplex, 3).volume() == doctest::Approx(1.0 / 6.0));
    CHECK_THROWS(reference_cell(CellKind::box, 4));
  }

  TEST_CASE("contraction keeps the centroid and scales the diameter") {
    const Cell t = reference_cell(CellKind::simplex, 2);
    const Cell s = contract(t, 0.25);
    CHECK(s.diameter == doctest::Approx(0.25 * std::sqrt(2.0)));
    CHECK(s.diameter == doctest::Approx(max_pairwise_distance(s.vertices)));
    CHECK(s.centroid()[0] == doctest::Approx(t.centroid()[0]));
    CHECK(s.volume() == doctest::Approx(0.5 / 16.0));
    const Cell h = similar_cell(CellKind::box, 1, 0.125);
    CHECK(h.vertices[0][0] == doctest::Approx(0.4375));
    CHECK(h.diameter == doctest::Approx(0.125));
  }

  TEST_CASE("frame round trip") {
    const Frame f{{1.0, 2.0}, 0.5};
    const double x[] = {0.2, 0.8};
    const Point p = f.to_physical(x);
    const Point back = f.to_local(p);
    CHECK(back[0] == doctest::Approx(0.2));
    CHECK(back[1] == doctest::Approx(0.8));
  }
}
