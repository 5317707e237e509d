#pragma once

// Smooth windows omega with certified derivative bounds
//   C_j = sup_{R^N} d^j |omega|_{W^j_oo},   j = 0..J_max,
// their means over cells and jets of omega^n * chi.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "superapprox/field.hpp"
#include "superapprox/geometry.hpp"

namespace superapprox {

enum class WindowFamily { cosine, gaussian, constant };

std::string to_string(WindowFamily f);
WindowFamily window_family_from_string(const std::string& s);

/// Highest derivative order the gaussian certification table covers.
inline constexpr int kGaussianMaxCertifiedOrder = kMaxJetOrder;

/// cosine:   prod_i (1 + cos((x_i - c_i)/d)) / 2
/// gaussian: exp(-|x - c|^2 / (2 d^2))
/// constant: 1
class Window final : public SmoothField {
 public:
  Window(WindowFamily family, Point center, double scale, int jmax);

  WindowFamily family() const { return family_; }
  const Point& center() const { return center_; }
  double scale() const { return scale_; }
  int jmax() const { return jmax_; }
  const std::vector<double>& ctab() const { return ctab_; }
  /// max_j ctab[j]
  double c_dagger() const;

  int dim() const override { return static_cast<int>(center_.size()); }
  int max_order() const override { return jmax_; }
  /// Throws std::invalid_argument when order > jmax.
  Jet jet(std::span<const double> x, int order) const override;

 private:
  WindowFamily family_;
  Point center_;
  double scale_;
  int jmax_;
  std::vector<double> ctab_;
};

Window make_window(WindowFamily family, Point center, double scale, int jmax);

/// sup_t |d^r/dt^r exp(-t^2/2)| for r = 0..max_order, located at the roots of
/// the next Hermite polynomial and refined by bisection.
std::vector<double> gaussian_derivative_suprema(int max_order);

struct WindowOnCell {
  Window window;
  Cell cell;
  double mean = 0.0;
  bool converged = true;
};

/// Exact-mean by Gauss quadrature at two degrees that must agree to 1e-10 relative.
WindowOnCell window_mean(const Window& w, const Cell& cell);

/// sup_K |omega - omega_K| / (C_dagger d^-1 h_K) on the sampling lattice;
/// 0 when omega is constant.
double certify_deviation(const WindowOnCell& wc);

Jet jet_eval(const Window& w, std::span<const double> x, int order);

/// omega^n * chi
FieldPtr field_power_product(std::shared_ptr<const Window> w, int n, FieldPtr chi);
FieldPtr field_power_product(std::shared_ptr<const Window> w, int n, const RealPolynomial& chi);

struct WindowDescriptor {
  WindowFamily family = WindowFamily::cosine;
  Point center;
  double scale = 1.0;
  int jmax = 3;

  Window build() const { return make_window(family, center, scale, jmax); }
};

nlohmann::json to_json(const WindowDescriptor& d);
WindowDescriptor window_descriptor_from_json(const nlohmann::json& j, int dim);

}  // namespace superapprox
