#include "superapprox/norms.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace superapprox {

QuadratureRule gauss_legendre(int npoints) {
  if (npoints < 1) throw std::invalid_argument("gauss_legendre needs at least one point");
  QuadratureRule r;
  r.kind = CellKind::box;
  r.dim = 1;
  r.exactness = 2 * npoints - 1;
  const int n = npoints;
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from a Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.points.push_back(Point{0.5 * (1.0 - x)});
    r.weights.push_back(0.5 * w);
  }
  return r;
}

namespace {

int points_for(int degree) { return std::max(1, (degree + 2) / 2); }

QuadratureRule make_reference_rule(CellKind kind, int dim, int degree) {
  QuadratureRule r;
  r.kind = kind;
  r.dim = dim;
  r.exactness = degree;
  if (kind == CellKind::box) {
    const QuadratureRule g = gauss_legendre(points_for(degree));
    const std::size_t n = g.points.size();
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= n;
    for (std::size_t idx = 0; idx < total; ++idx) {
      Point p(static_cast<std::size_t>(dim));
      double w = 1.0;
      std::size_t rest = idx;
      for (int i = 0; i < dim; ++i) {
        const std::size_t k = rest % n;
        rest /= n;
        p[static_cast<std::size_t>(i)] = g.points[k][0];
        w *= g.weights[k];
      }
      r.points.push_back(p);
      r.weights.push_back(w);
    }
    return r;
  }
  // Collapsed (Duffy) tensor rule; the Jacobian raises the degree per axis.
  if (dim == 1) {
    const QuadratureRule g = gauss_legendre(points_for(degree));
    r.points = g.points;
    r.weights = g.weights;
    return r;
  }
  if (dim == 2) {
    const QuadratureRule gu = gauss_legendre(points_for(degree + 1));
    const QuadratureRule gv = gauss_legendre(points_for(degree));
    for (std::size_t a = 0; a < gu.points.size(); ++a)
      for (std::size_t b = 0; b < gv.points.size(); ++b) {
        const double u = gu.points[a][0], v = gv.points[b][0];
        r.points.push_back(Point{u, v * (1.0 - u)});
        r.weights.push_back(gu.weights[a] * gv.weights[b] * (1.0 - u));
      }
    return r;
  }
  const QuadratureRule gu = gauss_legendre(points_for(degree + 2));
  const QuadratureRule gv = gauss_legendre(points_for(degree + 1));
  const QuadratureRule gw = gauss_legendre(points_for(degree));
  for (std::size_t a = 0; a < gu.points.size(); ++a)
    for (std::size_t b = 0; b < gv.points.size(); ++b)
      for (std::size_t c = 0; c < gw.points.size(); ++c) {
        const double u = gu.points[a][0], v = gv.points[b][0], w = gw.points[c][0];
        r.points.push_back(Point{u, v * (1.0 - u), w * (1.0 - u) * (1.0 - v)});
        r.weights.push_back(gu.weights[a] * gv.weights[b] * gw.weights[c] * (1.0 - u) * (1.0 - u) * (1.0 - v));
      }
  return r;
}

double level_square_sum(const RealPolynomial& f, const std::vector<Point>& pts, const std::vector<double>& w,
                        int order) {
  double s = 0.0;
  for (const auto& alpha : indices_of_order(f.dim(), order)) {
    const RealPolynomial d = derive(f, alpha);
    if (d.is_zero()) continue;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double v = d(pts[i]);
      s += w[i] * v * v;
    }
  }
  return s;
}

double level_sup(const RealPolynomial& f, const std::vector<Point>& pts, int order, kernels::Exec exec) {
  std::vector<RealPolynomial> ds;
  for (const auto& alpha : indices_of_order(f.dim(), order)) {
    RealPolynomial d = derive(f, alpha);
    if (!d.is_zero()) ds.push_back(std::move(d));
  }
  if (ds.empty()) return 0.0;
  std::vector<double> v(pts.size());
  kernels::for_each_index(
      pts.size(),
      [&](std::size_t i) {
        double m = 0.0;
        for (const auto& d : ds) m = std::max(m, std::abs(d(pts[i])));
        v[i] = m;
      },
      exec);
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

void check_order(int order) {
  if (order < 0) throw std::invalid_argument("seminorm order must be non-negative");
}

std::vector<Point> reference_grid(const Cell& cell, int resolution) {
  if (resolution < 2) throw std::invalid_argument("sampling resolution must be at least 2");
  std::vector<Point> pts;
  std::vector<int> c(static_cast<std::size_t>(cell.dim), 0);
  const double step = 1.0 / (resolution - 1);
  while (true) {
    Point p(static_cast<std::size_t>(cell.dim));
    for (int i = 0; i < cell.dim; ++i) p[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] * step;
    if (cell.contains_local(p, 1e-12)) pts.push_back(std::move(p));
    int i = 0;
    while (i < cell.dim && ++c[static_cast<std::size_t>(i)] >= resolution) c[static_cast<std::size_t>(i++)] = 0;
    if (i == cell.dim) break;
  }
  return pts;
}

}  // namespace

const QuadratureRule& reference_quadrature(CellKind kind, int dim, int degree) {
  if (degree < 0 || degree > kMaxQuadratureDegree)
    throw std::invalid_argument("quadrature degree beyond catalog limit of 40");
  if (dim < 1 || dim > 3) throw std::invalid_argument("quadrature dimension must be 1, 2 or 3");
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, QuadratureRule> cache;
  const std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(static_cast<int>(kind), dim, degree);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_reference_rule(kind, dim, degree)).first;
  return it->second;
}

QuadratureRule build_quadrature(const Cell& cell, int degree) {
  QuadratureRule r = reference_quadrature(cell.kind, cell.dim, degree);
  const double jac = std::pow(cell.frame.scale, cell.dim);
  for (auto& p : r.points) p = cell.frame.to_physical(p);
  for (double& w : r.weights) w *= jac;
  return r;
}

std::vector<Point> sample_grid(const Cell& cell, int resolution) {
  std::vector<Point> pts = reference_grid(cell, resolution);
  for (auto& p : pts) p = cell.frame.to_physical(p);
  return pts;
}

double h_seminorm(const RealPolynomial& f, const Cell& cell, int order) {
  check_order(order);
  if (f.dim() != cell.dim) throw std::invalid_argument("polynomial and cell dimensions differ");
  const int deg = std::max(0, 2 * std::max(0, f.degree() - order));
  const QuadratureRule q = build_quadrature(cell, deg);
  return std::sqrt(level_square_sum(f, q.points, q.weights, order));
}

double h_seminorm_local(const RealPolynomial& local, const Cell& cell, int order) {
  check_order(order);
  if (local.dim() != cell.dim) throw std::invalid_argument("polynomial and cell dimensions differ");
  const int deg = std::max(0, 2 * std::max(0, local.degree() - order));
  const QuadratureRule& q = reference_quadrature(cell.kind, cell.dim, deg);
  const double ref = std::sqrt(level_square_sum(local, q.points, q.weights, order));
  return ref * std::pow(cell.frame.scale, 0.5 * cell.dim - order);
}

double h_seminorm(const SmoothField& f, const Cell& cell, int order, const FieldSeminormOptions& opt) {
  check_order(order);
  if (f.dim() != cell.dim) throw std::invalid_argument("field and cell dimensions differ");
  if (f.max_order() < order) throw std::invalid_argument("field jets do not reach the seminorm order");
  auto eval = [&](int degree) {
    const QuadratureRule q = build_quadrature(cell, degree);
    return std::sqrt(kernels::weighted_square_sum(f, q.points, q.weights, order, opt.exec));
  };
  double prev = eval(opt.base_degree);
  for (int degree = opt.base_degree + 8; degree <= kMaxQuadratureDegree; degree += 8) {
    const double next = eval(degree);
    if (std::abs(next - prev) <= opt.rel_tol * std::max(next, prev) + opt.abs_floor) return next;
    prev = next;
  }
  throw ConvergenceError("H seminorm quadrature did not converge up to degree 40");
}

double winf_seminorm(const RealPolynomial& f, const Cell& cell, int order, const SupOptions& opt) {
  check_order(order);
  if (f.dim() != cell.dim) throw std::invalid_argument("polynomial and cell dimensions differ");
  const double coarse = level_sup(f, sample_grid(cell, opt.resolution), order, opt.exec);
  const double fine = level_sup(f, sample_grid(cell, 2 * opt.resolution - 1), order, opt.exec);
  if (fine - coarse > opt.rel_tol * fine + opt.abs_floor)
    throw ConvergenceError("sampled sup changed by more than the doubling tolerance");
  return fine;
}

double winf_seminorm_local(const RealPolynomial& local, const Cell& cell, int order, const SupOptions& opt) {
  Cell ref = cell;
  ref.frame = Frame::identity(cell.dim);
  return winf_seminorm(local, ref, order, opt) * std::pow(cell.frame.scale, -order);
}

double winf_seminorm(const SmoothField& f, const Cell& cell, int order, const SupOptions& opt) {
  check_order(order);
  if (f.dim() != cell.dim) throw std::invalid_argument("field and cell dimensions differ");
  if (f.max_order() < order) throw std::invalid_argument("field jets do not reach the seminorm order");
  const double coarse = kernels::sampled_sup(f, sample_grid(cell, opt.resolution), order, opt.exec);
  const double fine = kernels::sampled_sup(f, sample_grid(cell, 2 * opt.resolution - 1), order, opt.exec);
  if (fine - coarse > opt.rel_tol * fine + opt.abs_floor)
    throw ConvergenceError("sampled sup changed by more than the doubling tolerance");
  return fine;
}

std::string to_string(Flavor s) { return s == Flavor::l2 ? "2" : "inf"; }

double seminorm(const SmoothField& f, const Cell& cell, int order, Flavor s) {
  return s == Flavor::l2 ? h_seminorm(f, cell, order) : winf_seminorm(f, cell, order);
}

double seminorm_local(const RealPolynomial& local, const Cell& cell, int order, Flavor s) {
  return s == Flavor::l2 ? h_seminorm_local(local, cell, order) : winf_seminorm_local(local, cell, order);
}

}  // namespace superapprox
