#include "superapprox/cutoff.hpp"

#include <cmath>
#include <stdexcept>

#include "superapprox/norms.hpp"

namespace superapprox {

namespace {

// Probabilists' Hermite polynomials He_0..He_n at t.
std::vector<double> hermite_values(double t, int n) {
  std::vector<double> he(static_cast<std::size_t>(n) + 1);
  he[0] = 1.0;
  if (n >= 1) he[1] = t;
  for (int k = 1; k < n; ++k)
    he[static_cast<std::size_t>(k) + 1] = t * he[static_cast<std::size_t>(k)] - k * he[static_cast<std::size_t>(k) - 1];
  return he;
}

// C_j = max over |alpha| = j of prod_i s[alpha_i] for a product of N 1-D factors.
std::vector<double> tensor_ctab(const std::vector<double>& s, int dim, int jmax) {
  std::vector<double> best(static_cast<std::size_t>(jmax) + 1, 0.0);
  for (int j = 0; j <= jmax; ++j) best[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j)];
  for (int d = 1; d < dim; ++d) {
    std::vector<double> next(best.size(), 0.0);
    for (int j = 0; j <= jmax; ++j)
      for (int a = 0; a <= j; ++a)
        next[static_cast<std::size_t>(j)] =
            std::max(next[static_cast<std::size_t>(j)], best[static_cast<std::size_t>(j - a)] * s[static_cast<std::size_t>(a)]);
    best = std::move(next);
  }
  return best;
}

}  // namespace

std::string to_string(WindowFamily f) {
  switch (f) {
    case WindowFamily::cosine: return "cosine";
    case WindowFamily::gaussian: return "gaussian";
    case WindowFamily::constant: return "constant";
  }
  return "unknown";
}

WindowFamily window_family_from_string(const std::string& s) {
  if (s == "cosine") return WindowFamily::cosine;
  if (s == "gaussian") return WindowFamily::gaussian;
  if (s == "constant") return WindowFamily::constant;
  throw std::invalid_argument("unknown window family '" + s + "'");
}

std::vector<double> gaussian_derivative_suprema(int max_order) {
  if (max_order < 0 || max_order > kGaussianMaxCertifiedOrder)
    throw std::invalid_argument("gaussian certification table covers orders 0..12");
  std::vector<double> sup{1.0};
  for (int r = 1; r <= max_order; ++r) {
    // |He_r(t)| e^{-t^2/2} is extremal where He_{r+1} vanishes.
    auto g = [r](double t) { return hermite_values(t, r + 1)[static_cast<std::size_t>(r) + 1]; };
    const double bound = 2.0 * std::sqrt(r + 2.0) + 1.0;
    const double step = 1e-3;
    double best = 0.0;
    double a = -bound, ga = g(a);
    for (double b = a + step; b <= bound + step; b += step) {
      const double gb = g(b);
      if (ga == 0.0 || (ga < 0.0) != (gb < 0.0)) {
        double lo = a, hi = b, glo = ga;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double gm = g(mid);
          if ((gm < 0.0) == (glo < 0.0) && gm != 0.0) {
            lo = mid;
            glo = gm;
          } else {
            hi = mid;
          }
        }
        const double t = 0.5 * (lo + hi);
        best = std::max(best, std::abs(hermite_values(t, r)[static_cast<std::size_t>(r)]) * std::exp(-0.5 * t * t));
      }
      a = b;
      ga = gb;
    }
    sup.push_back(best);
  }
  return sup;
}

Window::Window(WindowFamily family, Point center, double scale, int jmax)
    : family_(family), center_(std::move(center)), scale_(scale), jmax_(jmax) {
  if (!(scale_ > 0.0)) throw std::invalid_argument("window scale d must be positive");
  if (jmax_ < 1) throw std::invalid_argument("window jmax must be at least 1");
  if (center_.empty() || center_.size() > static_cast<std::size_t>(kMaxJetDim))
    throw std::invalid_argument("window center must have 1..3 components");
  if (jmax_ > kMaxJetOrder) throw std::invalid_argument("window jmax beyond the jet order limit");
  const int dim = static_cast<int>(center_.size());
  std::vector<double> s1d;
  switch (family_) {
    case WindowFamily::cosine:
      // sup |g| = 1 and sup |g^{(r)}| = 1/2 for g(t) = (1 + cos t)/2.
      s1d.assign(static_cast<std::size_t>(jmax_) + 1, 0.5);
      s1d[0] = 1.0;
      break;
    case WindowFamily::gaussian:
      if (jmax_ > kGaussianMaxCertifiedOrder) throw std::invalid_argument("gaussian jmax beyond certification table");
      s1d = gaussian_derivative_suprema(jmax_);
      break;
    case WindowFamily::constant:
      s1d.assign(static_cast<std::size_t>(jmax_) + 1, 0.0);
      s1d[0] = 1.0;
      break;
  }
  ctab_ = tensor_ctab(s1d, dim, jmax_);
}

double Window::c_dagger() const {
  double m = 0.0;
  for (double c : ctab_) m = std::max(m, c);
  return m;
}

Jet Window::jet(std::span<const double> x, int order) const {
  if (order > jmax_) throw std::invalid_argument("window jet order exceeds jmax");
  const int dim = this->dim();
  if (static_cast<int>(x.size()) != dim) throw std::invalid_argument("window evaluation point dimension mismatch");
  if (family_ == WindowFamily::constant) return Jet::constant(dim, order, 1.0);
  std::vector<std::vector<double>> factors(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    const double t = (x[static_cast<std::size_t>(i)] - center_[static_cast<std::size_t>(i)]) / scale_;
    auto& f = factors[static_cast<std::size_t>(i)];
    double dpow = 1.0;  // d^{-r}
    if (family_ == WindowFamily::cosine) {
      const double c = std::cos(t), s = std::sin(t);
      const double cycle[4] = {c, -s, -c, s};
      f.push_back(0.5 * (1.0 + c));
      for (int r = 1; r <= order; ++r) {
        dpow /= scale_;
        f.push_back(0.5 * cycle[r % 4] * dpow / static_cast<double>(factorial(r)));
      }
    } else {
      const auto he = hermite_values(t, order);
      const double e = std::exp(-0.5 * t * t);
      for (int r = 0; r <= order; ++r) {
        const double sign = (r % 2 == 0) ? 1.0 : -1.0;
        f.push_back(sign * he[static_cast<std::size_t>(r)] * e * dpow / static_cast<double>(factorial(r)));
        dpow /= scale_;
      }
    }
  }
  return tensor_product_jet(factors, order);
}

Window make_window(WindowFamily family, Point center, double scale, int jmax) {
  return Window(family, std::move(center), scale, jmax);
}

WindowOnCell window_mean(const Window& w, const Cell& cell) {
  if (w.dim() != cell.dim) throw std::invalid_argument("window and cell dimensions differ");
  auto mean_at = [&](int degree) {
    const QuadratureRule q = build_quadrature(cell, degree);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < q.points.size(); ++i) {
      num += q.weights[i] * w.value(q.points[i]);
      den += q.weights[i];
    }
    return num / den;
  };
  const double m1 = mean_at(20);
  const double m2 = mean_at(28);
  WindowOnCell out{w, cell, m2, std::abs(m2 - m1) <= 1e-10 * std::abs(m2)};
  return out;
}

double certify_deviation(const WindowOnCell& wc) {
  if (wc.window.family() == WindowFamily::constant) return 0.0;
  if (wc.window.ctab().size() < 2) throw std::invalid_argument("certify_deviation needs ctab up to j = 1");
  const auto omega = std::make_shared<Window>(wc.window);
  const FieldPtr dev = shifted(omega, -wc.mean);
  const double sup = winf_seminorm(*dev, wc.cell, 0);
  if (sup == 0.0) return 0.0;
  return sup / (wc.window.c_dagger() * wc.cell.diameter / wc.window.scale());
}

Jet jet_eval(const Window& w, std::span<const double> x, int order) { return w.jet(x, order); }

FieldPtr field_power_product(std::shared_ptr<const Window> w, int n, FieldPtr chi) {
  if (n < 0) throw std::invalid_argument("window power must be non-negative");
  if (n == 0) return chi;
  return product({{std::move(w), n}, {std::move(chi), 1}});
}

FieldPtr field_power_product(std::shared_ptr<const Window> w, int n, const RealPolynomial& chi) {
  return field_power_product(std::move(w), n, make_polynomial_field(chi));
}

nlohmann::json to_json(const WindowDescriptor& d) {
  return {{"family", to_string(d.family)}, {"center", d.center}, {"scale", d.scale}, {"jmax", d.jmax}};
}

WindowDescriptor window_descriptor_from_json(const nlohmann::json& j, int dim) {
  WindowDescriptor d;
  d.family = window_family_from_string(j.at("family").get<std::string>());
  d.center = j.contains("center") ? j.at("center").get<Point>() : Point(static_cast<std::size_t>(dim), 0.0);
  if (static_cast<int>(d.center.size()) != dim) throw std::invalid_argument("window center length differs from element dimension");
  d.scale = j.value("scale", 1.0);
  d.jmax = j.value("jmax", 3);
  return d;
}

}  // namespace superapprox
