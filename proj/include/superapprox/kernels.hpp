#pragma once

// Data-parallel point loops. Each kernel has a serial reference path and an
// OpenMP path; both fill per-index slots and reduce serially in index order,
// so the two produce bit-identical results.

#include <functional>
#include <vector>

#include "superapprox/field.hpp"
#include "superapprox/geometry.hpp"

namespace superapprox::kernels {

enum class Exec { serial, parallel };

/// Calls fn(i) for i in [0, n). Exceptions thrown by fn are rethrown on the
/// calling thread (the one from the lowest index wins).
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn, Exec exec);

/// max over points and |alpha| = order of |d^alpha f(x)|.
double sampled_sup(const SmoothField& f, const std::vector<Point>& points, int order, Exec exec);

/// sum_i w_i sum_{|alpha| = order} (d^alpha f(x_i))^2
double weighted_square_sum(const SmoothField& f, const std::vector<Point>& points, const std::vector<double>& weights,
                           int order, Exec exec);

/// max over points of |f(x) - g(x)|, together with max |f| and max |g|.
struct PointwiseGap {
  double gap = 0.0;
  double max_f = 0.0;
  double max_g = 0.0;
};
PointwiseGap pointwise_gap(const SmoothField& f, const SmoothField& g, const std::vector<Point>& points, Exec exec);

int max_threads();

}  // namespace superapprox::kernels
