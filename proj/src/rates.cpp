#include "superapprox/rates.hpp"

#include <cmath>
#include <stdexcept>

namespace superapprox {

int usable_points(const std::vector<std::pair<double, double>>& pairs, bool drop_zeros, double floor) {
  int n = 0;
  for (const auto& [h, v] : pairs)
    if (h > 0.0 && (!drop_zeros || v > floor)) ++n;
  return n;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs, bool drop_zeros, double floor) {
  std::vector<double> xs, ys;
  for (const auto& [h, v] : pairs) {
    if (drop_zeros && !(v > floor)) continue;
    if (!(h > 0.0) || !(v > 0.0)) throw std::invalid_argument("fit_rate needs positive h and values");
    xs.push_back(std::log(h));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 3) throw std::invalid_argument("fit_rate needs at least three usable points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_rate needs at least two distinct h values");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = static_cast<int>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    fit.residual = std::max(fit.residual, std::abs(ys[i] - (fit.intercept + fit.slope * xs[i])));
  return fit;
}

}  // namespace superapprox
