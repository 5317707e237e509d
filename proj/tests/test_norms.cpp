#include <cmath>

#include <doctest.h>

#include "superapprox/cutoff.hpp"
#include "superapprox/elements.hpp"
#include "superapprox/norms.hpp"
#include "superapprox/rng.hpp"

using namespace superapprox;

namespace {

RealPolynomial random_real(int dim, int degree, std::uint64_t seed) {
  Rng rng(seed);
  RealPolynomial p(dim);
  for (const auto& a : indices_up_to(dim, degree)) p.add_term(a, rng.normal());
  return p;
}

// Image of the reference cell under x -> lambda x.
Cell dilated(CellKind kind, int dim, double lambda) {
  Cell c = reference_cell(kind, dim);
  for (auto& v : c.vertices)
    for (double& x : v) x *= lambda;
  c.diameter *= lambda;
  c.frame.scale = lambda;
  return c;
}

// Exact integral of x^alpha over the unit simplex or box.
double monomial_integral(CellKind kind, const MultiIndex& a) {
  if (kind == CellKind::box) {
    double v = 1.0;
    for (int i = 0; i < a.dim(); ++i) v /= a[i] + 1;
    return v;
  }
  double num = 1.0;
  for (int i = 0; i < a.dim(); ++i) num *= std::tgamma(a[i] + 1.0);
  return num / std::tgamma(a.order() + a.dim() + 1.0);
}

}  // namespace

TEST_SUITE("norms") {
  TEST_CASE("quadrature examples") {
    const Cell unit = reference_cell(CellKind::simplex, 1);
    const auto mid = build_quadrature(unit, 1);
    REQUIRE(mid.points.size() == 1);
    CHECK(mid.points[0][0] == doctest::Approx(0.5));
    CHECK(mid.weights[0] == doctest::Approx(1.0));

    const auto g2 = build_quadrature(unit, 3);
    REQUIRE(g2.points.size() == 2);
    CHECK(g2.points[0][0] == doctest::Approx(0.2113248654051871).epsilon(1e-15));
    CHECK(g2.points[1][0] == doctest::Approx(0.7886751345948129).epsilon(1e-15));

    const auto tri = build_quadrature(reference_cell(CellKind::simplex, 2), 2);
    double sum = 0.0;
    for (double w : tri.weights) sum += w;
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(build_quadrature(unit, kMaxQuadratureDegree + 1), std::invalid_argument);
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
  }

  TEST_CASE("quadrature weights sum to the cell volume and integrate monomials exactly") {
    for (auto kind : {CellKind::simplex, CellKind::box})
      for (int dim = 1; dim <= 3; ++dim)
        for (int degree : {0, 3, 8, 17, 40}) {
          const auto& q = reference_quadrature(kind, dim, degree);
          CHECK(q.exactness >= degree);
          double vol = 0.0;
          for (double w : q.weights) vol += w;
          CHECK(vol == doctest::Approx(reference_cell(kind, dim).volume()).epsilon(1e-12));
          for (const auto& a : indices_of_order(dim, degree)) {
            double s = 0.0;
            for (std::size_t i = 0; i < q.points.size(); ++i) {
              double m = q.weights[i];
              for (int k = 0; k < dim; ++k) m *= std::pow(q.points[i][static_cast<std::size_t>(k)], a[k]);
              s += m;
            }
            const double exact = monomial_integral(kind, a);
            CHECK(std::abs(s - exact) <= 1e-10 * exact);
          }
        }
  }

  TEST_CASE("random polynomials integrate exactly") {
    const Cell tri = reference_cell(CellKind::simplex, 2);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto p = random_real(2, 9, 900 + s);
      double exact = 0.0;
      for (const auto& [a, c] : p.terms()) exact += c * monomial_integral(CellKind::simplex, a);
      const auto q = build_quadrature(tri, 9);
      double num = 0.0;
      for (std::size_t i = 0; i < q.points.size(); ++i) num += q.weights[i] * p(q.points[i]);
      CHECK(std::abs(num - exact) <= 1e-10 * std::max(1.0, std::abs(exact)));
    }
  }

  TEST_CASE("H seminorm examples") {
    const Cell unit = reference_cell(CellKind::simplex, 1);
    CHECK(h_seminorm(RealPolynomial::variable(1, 0), unit, 1) == doctest::Approx(1.0).epsilon(1e-15));
    const auto x2 = RealPolynomial::monomial(MultiIndex{2});
    CHECK(h_seminorm(x2, unit, 1) == doctest::Approx(1.1547005383792515).epsilon(1e-14));
    const auto p = random_real(2, 3, 4);
    CHECK(h_seminorm(p, reference_cell(CellKind::box, 2), 4) == 0.0);
    CHECK(h_seminorm(PolynomialField(x2), unit, 1) == doctest::Approx(1.1547005383792515).epsilon(1e-12));
  }

  TEST_CASE("W-infinity seminorm examples") {
    const Cell unit = reference_cell(CellKind::simplex, 1);
    const auto x2 = RealPolynomial::monomial(MultiIndex{2});
    CHECK(winf_seminorm(x2, unit, 1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(winf_seminorm(RealPolynomial::constant(1, 3.0), unit, 2) == 0.0);
    const Window w = make_window(WindowFamily::cosine, {0.0}, 1.0, 2);
    CHECK(winf_seminorm(w, unit, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(to_string(Flavor::l2) == "2");
    CHECK(to_string(Flavor::linf) == "inf");
  }

  TEST_CASE("homogeneity and triangle inequality") {
    for (auto kind : {CellKind::simplex, CellKind::box}) {
      const Cell c = reference_cell(kind, 2);
      for (std::uint64_t s = 0; s < 4; ++s) {
        const auto f = random_real(2, 3, 50 + s);
        const auto g = random_real(2, 3, 70 + s);
        for (int p = 0; p <= 2; ++p) {
          CHECK(h_seminorm(f * -2.5, c, p) == doctest::Approx(2.5 * h_seminorm(f, c, p)).epsilon(1e-12));
          CHECK(winf_seminorm(f * -2.5, c, p) == doctest::Approx(2.5 * winf_seminorm(f, c, p)).epsilon(1e-12));
          CHECK(h_seminorm(f + g, c, p) <= h_seminorm(f, c, p) + h_seminorm(g, c, p) + 1e-10);
          CHECK(winf_seminorm(f + g, c, p) <= winf_seminorm(f, c, p) + winf_seminorm(g, c, p) + 1e-10);
        }
      }
    }
  }

  TEST_CASE("scaling laws under x -> lambda x") {
    for (auto kind : {CellKind::simplex, CellKind::box})
      for (int dim = 1; dim <= 2; ++dim) {
        const Cell c1 = reference_cell(kind, dim);
        for (std::uint64_t s = 0; s < 3; ++s) {
          const auto f = random_real(dim, 3, 10 * s + static_cast<std::uint64_t>(dim));
          for (double lambda : {0.5, 0.125}) {
            const Cell cl = dilated(kind, dim, lambda);
            const Point zero(static_cast<std::size_t>(dim), 0.0);
            const auto g = compose_affine(f, 1.0 / lambda, zero);
            for (int p = 0; p <= 3; ++p) {
              const double h1 = h_seminorm(f, c1, p);
              CHECK(h_seminorm(g, cl, p) == doctest::Approx(std::pow(lambda, 0.5 * dim - p) * h1).epsilon(1e-8));
              const double w1 = winf_seminorm(f, c1, p);
              CHECK(winf_seminorm(g, cl, p) == doctest::Approx(std::pow(lambda, -p) * w1).epsilon(1e-2));
            }
          }
        }
      }
  }

  TEST_CASE("local and global representations agree") {
    const auto e = scale_element(build_element(ElementFamily::lagrange_simplex, 2, 2), 0.25);
    const auto z = random_real(2, 2, 77);
    const LocalPolynomialField f(z, e.frame());
    for (int p = 0; p <= 2; ++p) {
      CHECK(h_seminorm_local(z, e.cell(), p) == doctest::Approx(h_seminorm(f, e.cell(), p)).epsilon(1e-10));
      CHECK(winf_seminorm_local(z, e.cell(), p) == doctest::Approx(winf_seminorm(f, e.cell(), p)).epsilon(1e-10));
      CHECK(seminorm_local(z, e.cell(), p, Flavor::l2) == doctest::Approx(seminorm(f, e.cell(), p, Flavor::l2)).epsilon(1e-10));
    }
  }

  TEST_CASE("sampling grid stays inside the cell") {
    const Cell t = contract(reference_cell(CellKind::simplex, 2), 0.5);
    const auto pts = sample_grid(t, 9);
    CHECK(pts.size() == 45);
    for (const auto& p : pts) CHECK(t.contains_local(t.frame.to_local(p)));
    CHECK(sample_grid(reference_cell(CellKind::box, 2), 5).size() == 25);
  }

  TEST_CASE("non-convergence is reported") {
    const Cell unit = reference_cell(CellKind::simplex, 1);
    SinusoidField fast({60.0}, {0.0});
    CHECK_THROWS_AS(h_seminorm(fast, unit, 0), ConvergenceError);
    // A spike between two coarse lattice points only shows on the doubled lattice.
    const Window spike = make_window(WindowFamily::gaussian, {0.5 / 63.0}, 1e-3, 1);
    CHECK_THROWS_AS(winf_seminorm(spike, unit, 0), ConvergenceError);
    CHECK_THROWS_AS(h_seminorm(RealPolynomial::variable(2, 0), unit, 0), std::invalid_argument);
    CHECK_THROWS_AS(h_seminorm(RealPolynomial::variable(1, 0), unit, -1), std::invalid_argument);
  }
}
