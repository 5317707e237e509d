#pragma once

#include <utility>
#include <vector>

namespace superapprox {

/// Least-squares line through (log h, log value).
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |log value - fitted line|
  int points = 0;
};

/// Throws std::invalid_argument with fewer than three usable pairs. With
/// drop_zeros, pairs whose value is <= floor are skipped first.
RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs, bool drop_zeros = true, double floor = 0.0);

/// Number of pairs fit_rate would use.
int usable_points(const std::vector<std::pair<double, double>>& pairs, bool drop_zeros, double floor);

}  // namespace superapprox
