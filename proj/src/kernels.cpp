#include "superapprox/kernels.hpp"

#include <cmath>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace superapprox::kernels {

namespace {

void for_each_serial(std::size_t n, const std::function<void(std::size_t)>& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

void for_each_parallel(std::size_t n, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double order_level_max(const Jet& j, int order) {
  const JetLayout& L = j.layout();
  double m = 0.0;
  for (std::size_t k = L.level_begin[order]; k < L.level_begin[order + 1]; ++k) m = std::max(m, std::abs(j.derivative(k)));
  return m;
}

double order_level_square_sum(const Jet& j, int order) {
  const JetLayout& L = j.layout();
  double s = 0.0;
  for (std::size_t k = L.level_begin[order]; k < L.level_begin[order + 1]; ++k) {
    const double d = j.derivative(k);
    s += d * d;
  }
  return s;
}

}  // namespace

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn, Exec exec) {
  if (exec == Exec::parallel)
    for_each_parallel(n, fn);
  else
    for_each_serial(n, fn);
}

double sampled_sup(const SmoothField& f, const std::vector<Point>& points, int order, Exec exec) {
  std::vector<double> v(points.size());
  for_each_index(
      points.size(), [&](std::size_t i) { v[i] = order_level_max(f.jet(points[i], order), order); }, exec);
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

double weighted_square_sum(const SmoothField& f, const std::vector<Point>& points, const std::vector<double>& weights,
                           int order, Exec exec) {
  std::vector<double> v(points.size());
  for_each_index(
      points.size(), [&](std::size_t i) { v[i] = weights[i] * order_level_square_sum(f.jet(points[i], order), order); },
      exec);
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

PointwiseGap pointwise_gap(const SmoothField& f, const SmoothField& g, const std::vector<Point>& points, Exec exec) {
  std::vector<double> fv(points.size()), gv(points.size());
  for_each_index(
      points.size(),
      [&](std::size_t i) {
        fv[i] = f.value(points[i]);
        gv[i] = g.value(points[i]);
      },
      exec);
  PointwiseGap out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.gap = std::max(out.gap, std::abs(fv[i] - gv[i]));
    out.max_f = std::max(out.max_f, std::abs(fv[i]));
    out.max_g = std::max(out.max_g, std::abs(gv[i]));
  }
  return out;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace superapprox::kernels
