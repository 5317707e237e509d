#include <cmath>

#include <doctest.h>

#include "superapprox/constants.hpp"

using namespace superapprox;

namespace {

FiniteElement p1_interval() { return build_element(ElementFamily::lagrange_simplex, 1, 1); }

}  // namespace

TEST_SUITE("constants") {
  TEST_CASE("closed-form inverse constants on P1") {
    const auto e = p1_interval();
    const auto c2 = estimate_inverse_constant(e, 0, 1, Flavor::l2);
    CHECK(c2.value == doctest::Approx(3.4641016151377546).epsilon(1e-10));
    CHECK(c2.method == EstimateMethod::eigen);
    CHECK_FALSE(c2.lower_bound);
    CHECK_FALSE(c2.degenerate);
    // extremal chi is a multiple of x - 1/2
    REQUIRE(c2.extremal.size() == 2);
    CHECK(c2.extremal[0] / c2.extremal[1] == doctest::Approx(-0.5).epsilon(1e-10));

    const auto ci = estimate_inverse_constant(e, 0, 1, Flavor::linf, 3);
    CHECK(ci.value == doctest::Approx(2.0).epsilon(1e-2));
    CHECK(ci.value <= 2.0 + 1e-12);
    CHECK(ci.method == EstimateMethod::sampled);
    CHECK(ci.lower_bound);
  }

  TEST_CASE("degenerate order k + 1") {
    const auto e = build_element(ElementFamily::lagrange_simplex, 2, 2);
    for (auto s : {Flavor::l2, Flavor::linf}) {
      const auto c = estimate_inverse_constant(e, 1, 3, s);
      CHECK(c.degenerate);
      CHECK(c.value == 0.0);
      CHECK(c.extremal.empty());
    }
    // Q1 contains xy, so order 2 = k + 1 does not vanish on the box.
    const auto q1 = build_element(ElementFamily::lagrange_box, 1, 2);
    CHECK_FALSE(estimate_inverse_constant(q1, 0, 2, Flavor::l2).degenerate);
  }

  TEST_CASE("argument checks") {
    const auto e = p1_interval();
    CHECK_THROWS_AS(estimate_inverse_constant(e, 1, 1, Flavor::l2), std::invalid_argument);
    CHECK_THROWS_AS(estimate_inverse_constant(e, 0, 3, Flavor::l2), std::invalid_argument);
    CHECK_THROWS_AS(estimate_l2_linf_constant(e, 2), std::invalid_argument);
    CHECK_THROWS_AS(estimate_interp_constant(e, 3, 2, 0), std::invalid_argument);
  }

  TEST_CASE("L2 to L-infinity constants") {
    const auto p0 = build_element(ElementFamily::lagrange_simplex, 0, 1);
    CHECK(estimate_l2_linf_constant(p0, 0).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(estimate_l2_linf_constant(scale_element(p0, 0.125), 0).value == doctest::Approx(1.0).epsilon(1e-12));
    const auto c = estimate_l2_linf_constant(p1_interval(), 0);
    CHECK(c.value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(c.which == ConstantKind::c_diamond);
    CHECK(c.lower_bound);
  }

  TEST_CASE("interpolation ratio examples") {
    const auto e = p1_interval();
    const PolynomialField x2(RealPolynomial::monomial(MultiIndex{2}));
    CHECK(interpolation_ratio(e, x2, 0) == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(interpolation_ratio(e, x2, 1) == doctest::Approx(0.5).epsilon(1e-10));
    RealPolynomial lin(1);
    lin.add_term(MultiIndex{0}, 0.3);
    lin.add_term(MultiIndex{1}, -1.7);
    CHECK(interpolation_ratio(e, PolynomialField(lin), 0) == 0.0);
  }

  TEST_CASE("eigen estimates are attained by their extremal polynomial") {
    for (const auto& d : {ElementDescriptor{ElementFamily::lagrange_simplex, 2, 2, 1.0},
                          ElementDescriptor{ElementFamily::lagrange_box, 2, 2, 0.5},
                          ElementDescriptor{ElementFamily::hermite_1d, 3, 1, 1.0}}) {
      const auto e = d.build();
      const double h = e.diameter();
      for (int p = 0; p <= d.degree; ++p)
        for (int q = p + 1; q <= d.degree; ++q) {
          const auto c = estimate_inverse_constant(e, p, q, Flavor::l2);
          const auto chi = e.space().polynomial(c.extremal);
          const double ratio = h_seminorm_local(chi, e.cell(), q) / h_seminorm_local(chi, e.cell(), p);
          CHECK(ratio * std::pow(h, q - p) == doctest::Approx(c.value).epsilon(1e-6));
        }
    }
  }

  TEST_CASE("product bound across an intermediate order") {
    for (const auto& d : desk_catalog()) {
      const auto e = d.build();
      for (int p = 0; p <= d.degree; ++p)
        for (int r = p + 1; r <= d.degree; ++r)
          for (int q = r + 1; q <= d.degree + 1; ++q) {
            const double pq = estimate_inverse_constant(e, p, q, Flavor::l2).value;
            const double pr = estimate_inverse_constant(e, p, r, Flavor::l2).value;
            const double rq = estimate_inverse_constant(e, r, q, Flavor::l2).value;
            CHECK(pq <= pr * rq * (1.0 + 1e-6));
          }
    }
  }

  TEST_CASE("h-uniformity under similarity") {
    const auto base = build_element(ElementFamily::lagrange_simplex, 2, 2);
    const auto s1 = estimate_inverse_constant(base, 0, 2, Flavor::l2).value;
    const auto i1 = estimate_inverse_constant(base, 0, 1, Flavor::linf, 1).value;
    const auto d1 = estimate_l2_linf_constant(base, 1).value;
    const auto f1 = estimate_interp_constant(base, 1, 3, 5).value;
    for (double lambda : {0.5, 0.25}) {
      const auto e = scale_element(base, lambda);
      CHECK(estimate_inverse_constant(e, 0, 2, Flavor::l2).value == doctest::Approx(s1).epsilon(0.02));
      CHECK(estimate_inverse_constant(e, 0, 1, Flavor::linf, 1).value == doctest::Approx(i1).epsilon(0.02));
      CHECK(estimate_l2_linf_constant(e, 1).value == doctest::Approx(d1).epsilon(0.02));
      CHECK(estimate_interp_constant(e, 1, 3, 5).value == doctest::Approx(f1).epsilon(0.02));
    }
  }

  TEST_CASE("interpolation rate study on the test field") {
    const auto e = build_element(ElementFamily::lagrange_simplex, 2, 1);
    const auto f = transcendental_test_field(1);
    for (int ell = 0; ell <= 3; ++ell) {
      const auto study = interpolation_rate_study(e, *f, ell);
      CHECK(study.predicted == 3 - ell);
      CHECK(study.values.size() == 7);
      REQUIRE(study.fit.has_value());
      CHECK(study.fit->slope >= study.predicted - 0.15);
      CHECK(study.pass);
    }
  }

  TEST_CASE("interpolation constant is positive, finite and a lower bound") {
    const auto c = estimate_interp_constant(build_element(ElementFamily::lagrange_box, 1, 2), 0, 4, 9);
    CHECK(c.which == ConstantKind::c_flat);
    CHECK(c.value > 0.0);
    CHECK(std::isfinite(c.value));
    CHECK(c.lower_bound);
    CHECK(c.rate_ok);
    CHECK(estimate_interp_constant(build_element(ElementFamily::lagrange_box, 1, 2), 0, 4, 9).value == c.value);
  }

  TEST_CASE("Gram matrices are symmetric positive semidefinite") {
    const auto e = build_element(ElementFamily::lagrange_simplex, 3, 2);
    for (int p = 0; p <= 3; ++p) {
      const Eigen::MatrixXd G = seminorm_gram(e, p);
      CHECK((G - G.transpose()).norm() <= 1e-12 * G.norm());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10 * G.norm());
    }
  }

  TEST_CASE("CSV row format") {
    const auto c = estimate_inverse_constant(p1_interval(), 0, 1, Flavor::l2);
    CHECK(constants_csv_header() == "which,family,k,N,p,q,s,method,value,degenerate_flag\n");
    const std::string row = constants_csv_row(c);
    const std::string prefix = "C_sharp,lagrange-simplex,1,1,0,1,2,eigen,";
    REQUIRE(row.rfind(prefix, 0) == 0);
    CHECK(row.substr(row.size() - 3) == ",0\n");
    CHECK(std::stod(row.substr(prefix.size())) == c.value);
  }
}
