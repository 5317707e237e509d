#include <atomic>
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "superapprox/cutoff.hpp"
#include "superapprox/kernels.hpp"
#include "superapprox/norms.hpp"
#include "superapprox/rates.hpp"
#include "superapprox/rng.hpp"

using namespace superapprox;
using kernels::Exec;

namespace {

FieldPtr windowed_field() {
  auto w = std::make_shared<const Window>(make_window(WindowFamily::gaussian, {0.3, 0.2}, 0.5, 4));
  RealPolynomial chi(2);
  chi.add_term(MultiIndex{2, 0}, 1.5);
  chi.add_term(MultiIndex{1, 1}, -0.5);
  chi.add_term(MultiIndex{0, 0}, 0.25);
  return field_power_product(w, 3, chi);
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("serial and parallel paths are bit-identical") {
    const auto f = windowed_field();
    const Cell c = reference_cell(CellKind::simplex, 2);
    const auto pts = sample_grid(c, 40);
    const auto q = build_quadrature(c, 20);
    for (int order = 0; order <= 3; ++order) {
      CHECK(kernels::sampled_sup(*f, pts, order, Exec::serial) == kernels::sampled_sup(*f, pts, order, Exec::parallel));
      CHECK(kernels::weighted_square_sum(*f, q.points, q.weights, order, Exec::serial) ==
            kernels::weighted_square_sum(*f, q.points, q.weights, order, Exec::parallel));
    }
    const auto g = shifted(f, 0.1);
    const auto a = kernels::pointwise_gap(*f, *g, pts, Exec::serial);
    const auto b = kernels::pointwise_gap(*f, *g, pts, Exec::parallel);
    CHECK(a.gap == b.gap);
    CHECK(a.max_f == b.max_f);
    CHECK(a.max_g == b.max_g);
    CHECK(a.gap == doctest::Approx(0.1).epsilon(1e-12));
  }

  TEST_CASE("seminorms agree across execution modes") {
    const auto f = windowed_field();
    const Cell c = reference_cell(CellKind::box, 2);
    FieldSeminormOptions hs, hp;
    hs.exec = Exec::serial;
    hp.exec = Exec::parallel;
    SupOptions ss, sp;
    ss.exec = Exec::serial;
    sp.exec = Exec::parallel;
    CHECK(h_seminorm(*f, c, 2, hs) == h_seminorm(*f, c, 2, hp));
    CHECK(winf_seminorm(*f, c, 1, ss) == winf_seminorm(*f, c, 1, sp));
  }

  TEST_CASE("for_each_index visits every index once") {
    for (auto exec : {Exec::serial, Exec::parallel}) {
      std::vector<int> hits(257, 0);
      kernels::for_each_index(hits.size(), [&](std::size_t i) { hits[i] += 1; }, exec);
      for (int h : hits) CHECK(h == 1);
    }
    CHECK(kernels::max_threads() >= 1);
  }

  TEST_CASE("exceptions surface on the caller, lowest index first") {
    for (auto exec : {Exec::serial, Exec::parallel}) {
      try {
        kernels::for_each_index(
            100,
            [](std::size_t i) {
              if (i == 17 || i == 60) throw std::runtime_error("index " + std::to_string(i));
            },
            exec);
        FAIL("expected an exception");
      } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "index 17");
      }
    }
  }
}

TEST_SUITE("rates") {
  TEST_CASE("fit examples") {
    const auto sq = fit_rate({{1.0, 1.0}, {0.5, 0.25}, {0.25, 0.0625}});
    CHECK(sq.slope == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sq.residual <= 1e-14);
    CHECK(sq.points == 3);
    const auto flat = fit_rate({{1.0, 3.0}, {0.5, 3.0}, {0.25, 3.0}});
    CHECK(std::abs(flat.slope) <= 1e-14);
    const auto d = fit_rate({{1.0, 1.0}, {0.5, 0.35}, {0.25, 0.13}});
    CHECK(d.slope == doctest::Approx(1.471708235816817).epsilon(1e-12));
    CHECK(d.intercept == doctest::Approx(-0.009903903411800299).epsilon(1e-10));
    CHECK(d.residual == doctest::Approx(0.01980780682359984).epsilon(1e-10));
  }

  TEST_CASE("zero dropping and too few points") {
    const std::vector<std::pair<double, double>> pairs{{1.0, 1.0}, {0.5, 0.5}, {0.25, 0.0}, {0.125, 0.125}};
    CHECK(usable_points(pairs, true, 0.0) == 3);
    CHECK(fit_rate(pairs).slope == doctest::Approx(1.0));
    CHECK(usable_points(pairs, true, 0.4) == 2);
    CHECK_THROWS_AS(fit_rate(pairs, true, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(fit_rate({{1.0, 1.0}, {0.5, 0.5}}), std::invalid_argument);
  }
}

TEST_SUITE("rng") {
  TEST_CASE("streams are pure functions of the counters") {
    CHECK(stream_seed(7, 1, 2) == stream_seed(7, 1, 2));
    CHECK(stream_seed(7, 1, 2) != stream_seed(7, 2, 1));
    CHECK(stream_seed(7, 1) != stream_seed(8, 1));
    Rng a(stream_seed(7, 3)), b(stream_seed(7, 3));
    CHECK(a.normal_vector(5) == b.normal_vector(5));
    CHECK(splitmix64(0) != splitmix64(1));
  }
}
