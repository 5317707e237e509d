#include "superapprox/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "superapprox/cutoff.hpp"
#include "superapprox/kernels.hpp"
#include "superapprox/rng.hpp"

namespace superapprox {

namespace {

constexpr double kNullThreshold = 1e-10;
constexpr int kStarts = 32;
constexpr int kAscentResolution = 17;
constexpr int kConstraintResolution = 33;
constexpr int kCandidates = 4;

ConstantEstimate base_estimate(const FiniteElement& elem, ConstantKind which) {
  ConstantEstimate e;
  e.which = which;
  e.family = elem.family();
  e.k = elem.degree();
  e.dim = elem.dim();
  return e;
}

// Rows: every (point, |alpha| = order) derivative functional applied to the
// local monomial basis, evaluated in reference coordinates.
Eigen::MatrixXd derivative_rows(const PolySpace& space, const std::vector<Point>& local_points, int order) {
  const auto alphas = indices_of_order(space.dim, order);
  std::vector<RealPolynomial> derived;
  derived.reserve(alphas.size() * space.size());
  for (const auto& a : alphas)
    for (const auto& b : space.basis) derived.push_back(derive(RealPolynomial::monomial(b), a));
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(local_points.size() * alphas.size()),
                       static_cast<Eigen::Index>(space.size()));
  Eigen::Index r = 0;
  for (const auto& x : local_points)
    for (std::size_t ai = 0; ai < alphas.size(); ++ai, ++r)
      for (std::size_t j = 0; j < space.size(); ++j)
        rows(r, static_cast<Eigen::Index>(j)) = derived[ai * space.size() + j](x);
  return rows;
}

std::vector<Point> local_grid(const Cell& cell, int resolution) {
  Cell ref = cell;
  ref.frame = Frame::identity(cell.dim);
  return sample_grid(ref, resolution);
}

// Orthonormal basis of the complement of G's null space, scaled so that
// W^T G W = I.
Eigen::MatrixXd whitening(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed on seminorm Gram matrix");
  const double top = es.eigenvalues().maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > kNullThreshold * top) keep.push_back(i);
  Eigen::MatrixXd w(g.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    w.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]) / std::sqrt(es.eigenvalues()(keep[c]));
  return w;
}

// |t|^P for P a power of two, by repeated squaring.
double even_power(double t, int P) {
  double a = t * t;
  for (int e = 2; e < P; e *= 2) a *= a;
  return a;
}

// log ||v||_P and its gradient direction sum_i |v_i|^{P-2} v_i / ||v||_P^P.
double log_pnorm(const Eigen::VectorXd& v, int P, Eigen::VectorXd* weights) {
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  if (weights) weights->resize(v.size());
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double t = v(i) / m;
    const double tp = even_power(t, P);
    s += tp;
    if (weights) (*weights)(i) = t != 0.0 ? tp / t : 0.0;
  }
  if (weights) *weights /= m * s;
  return std::log(m) + std::log(s) / P;
}

struct AscentResult {
  Eigen::VectorXd y;
  double ratio = 0.0;
};

double sup_ratio(const Eigen::MatrixXd& num, const Eigen::MatrixXd& den, const Eigen::VectorXd& y) {
  const double d = (den * y).cwiseAbs().maxCoeff();
  return d > 0.0 ? (num * y).cwiseAbs().maxCoeff() / d : 0.0;
}

// Maximizes max|num y| / max|den y| over the unit sphere by ascent on
// smoothed p-norm ratios with increasing exponent.
AscentResult ascend(const Eigen::MatrixXd& num, const Eigen::MatrixXd& den, Eigen::VectorXd y,
                    const std::vector<int>& exponents) {
  y.normalize();
  Eigen::VectorXd wn, wd;
  for (int P : exponents) {
    auto objective = [&](const Eigen::VectorXd& v, Eigen::VectorXd* grad) {
      const double a = log_pnorm(num * v, P, grad ? &wn : nullptr);
      const double b = log_pnorm(den * v, P, grad ? &wd : nullptr);
      if (grad) *grad = num.transpose() * wn - den.transpose() * wd;
      return a - b;
    };
    Eigen::VectorXd g;
    double f = objective(y, &g);
    double step = 1.0;
    for (int it = 0; it < 100; ++it) {
      g -= g.dot(y) * y;
      const double gn = g.norm();
      if (!(gn > 1e-12)) break;
      bool moved = false;
      for (int bt = 0; bt < 40; ++bt) {
        Eigen::VectorXd cand = (y + (step / gn) * g).normalized();
        const double fc = objective(cand, nullptr);
        if (fc > f) {
          y = cand;
          f = objective(y, &g);
          step = std::min(1.0, step * 2.0);
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved || step < 1e-12) break;
    }
  }
  return {y, sup_ratio(num, den, y)};
}

// max r.c subject to |a_i.c| <= 1 for every row a_i of A, solved as the dual
// standard-form LP  min 1.lambda  s.t.  [A^T, -A^T] lambda = r, lambda >= 0
// by revised simplex with big-M artificials. The simplex multipliers at the
// optimum are the maximizing c.
struct LpResult {
  double value = 0.0;
  Eigen::VectorXd c;
  bool ok = false;
};

LpResult max_functional(const Eigen::MatrixXd& A, const Eigen::VectorXd& r) {
  const Eigen::Index n = A.cols();
  const Eigen::Index m = A.rows();
  const double big = 1e6;
  const double tol = 1e-11;
  // Column j < 2m is sign(j) * row(j / 2); column 2m + k is the k-th artificial.
  Eigen::VectorXd b = r;
  Eigen::VectorXd flip = Eigen::VectorXd::Ones(n);
  for (Eigen::Index k = 0; k < n; ++k)
    if (b(k) < 0.0) {
      flip(k) = -1.0;
      b(k) = -b(k);
    }
  auto column = [&](Eigen::Index j) -> Eigen::VectorXd {
    if (j >= 2 * m) return Eigen::VectorXd::Unit(n, j - 2 * m);
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    return (sgn * A.row(j / 2).transpose()).cwiseProduct(flip);
  };
  auto cost = [&](Eigen::Index j) { return j >= 2 * m ? big : 1.0; };

  std::vector<Eigen::Index> basis(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) basis[static_cast<std::size_t>(k)] = 2 * m + k;
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
  LpResult res;
  for (int it = 0; it < 50 * static_cast<int>(n) + 100; ++it) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    const Eigen::VectorXd xb = lu.solve(b);
    Eigen::VectorXd cb(n);
    for (Eigen::Index k = 0; k < n; ++k) cb(k) = cost(basis[static_cast<std::size_t>(k)]);
    const Eigen::VectorXd y = lu.transpose().solve(cb);
    // Pricing: reduced cost of +-row i is 1 -+ a_i.(flip y).
    const Eigen::VectorXd ay = A * y.cwiseProduct(flip);
    Eigen::Index arg = 0;
    const double worst = ay.cwiseAbs().maxCoeff(&arg);
    double best_rc = 1.0 - worst;
    Eigen::Index enter = 2 * arg + (ay(arg) >= 0.0 ? 0 : 1);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double rc = big - y(k);
      if (rc < best_rc) {
        best_rc = rc;
        enter = 2 * m + k;
      }
    }
    if (best_rc >= -tol * std::max(1.0, worst)) {
      res.c = y.cwiseProduct(flip);
      res.value = r.dot(res.c);
      res.ok = true;
      for (Eigen::Index k = 0; k < n; ++k)
        if (basis[static_cast<std::size_t>(k)] >= 2 * m && xb(k) > 1e-9 * std::max(1.0, b.norm())) res.ok = false;
      return res;
    }
    const Eigen::VectorXd col = column(enter);
    const Eigen::VectorXd u = lu.solve(col);
    Eigen::Index leave = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k)
      if (u(k) > 1e-12 && xb(k) / u(k) < theta) {
        theta = xb(k) / u(k);
        leave = k;
      }
    if (leave < 0) return res;
    basis[static_cast<std::size_t>(leave)] = enter;
    B.col(leave) = col;
  }
  return res;
}

}  // namespace

std::string to_string(ConstantKind k) {
  switch (k) {
    case ConstantKind::c_flat: return "C_flat";
    case ConstantKind::c_sharp: return "C_sharp";
    case ConstantKind::c_diamond: return "C_diamond";
  }
  return "unknown";
}

std::string to_string(EstimateMethod m) { return m == EstimateMethod::eigen ? "eigen" : "sampled"; }

Eigen::MatrixXd seminorm_gram(const FiniteElement& elem, int order) {
  const PolySpace& space = elem.space();
  const int deg = std::max(0, 2 * (space.max_total_degree() - order));
  const QuadratureRule& q = reference_quadrature(elem.cell().kind, elem.dim(), deg);
  const Eigen::MatrixXd rows = derivative_rows(space, q.points, order);
  const auto n_alpha = static_cast<Eigen::Index>(indices_of_order(space.dim, order).size());
  Eigen::VectorXd w(rows.rows());
  for (std::size_t i = 0; i < q.points.size(); ++i)
    w.segment(static_cast<Eigen::Index>(i) * n_alpha, n_alpha).setConstant(q.weights[i]);
  const Eigen::MatrixXd g = rows.transpose() * w.asDiagonal() * rows;
  return g * std::pow(elem.frame().scale, elem.dim() - 2.0 * order);
}

ConstantEstimate estimate_inverse_constant(const FiniteElement& elem, int p, int q, Flavor s, std::uint64_t seed) {
  if (p < 0 || q <= p || q > elem.degree() + 1)
    throw std::invalid_argument("inverse estimate needs 0 <= p < q <= k + 1");
  ConstantEstimate e = base_estimate(elem, ConstantKind::c_sharp);
  e.p = p;
  e.q = q;
  e.s = s;
  e.method = s == Flavor::l2 ? EstimateMethod::eigen : EstimateMethod::sampled;
  e.lower_bound = s == Flavor::linf;
  const PolySpace& space = elem.space();
  if (q > space.max_total_degree()) {
    e.degenerate = true;
    return e;
  }
  const double h = elem.diameter();

  if (s == Flavor::l2) {
    const Eigen::MatrixXd w = whitening(seminorm_gram(elem, p));
    const Eigen::MatrixXd m = w.transpose() * seminorm_gram(elem, q) * w;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed on the inverse-estimate pencil");
    const Eigen::Index top = es.eigenvalues().size() - 1;
    const double mu = std::max(0.0, es.eigenvalues()(top));
    e.value = std::sqrt(mu) * std::pow(h, q - p);
    const Eigen::VectorXd c = w * es.eigenvectors().col(top);
    e.extremal.assign(c.data(), c.data() + c.size());
    return e;
  }

  // Two candidate sources: projected ascent from random starts, and for every
  // sampled numerator functional the exact maximizer under the sampled
  // denominator constraints. The best few are re-measured on the fine lattice.
  const Eigen::MatrixXd den_full = derivative_rows(space, local_grid(elem.cell(), kConstraintResolution), p);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(den_full, Eigen::ComputeFullV);
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > kNullThreshold * smax) ++rank;
  // Restrict to coefficients the denominator sees; the rest are 0/0 directions.
  const Eigen::MatrixXd basis = svd.matrixV().leftCols(rank);
  const Eigen::MatrixXd den_con = den_full * basis;
  const auto coarse = local_grid(elem.cell(), kAscentResolution);
  const Eigen::MatrixXd num = derivative_rows(space, coarse, q) * basis;
  const Eigen::MatrixXd den = derivative_rows(space, coarse, p) * basis;

  std::vector<AscentResult> results(kStarts + static_cast<std::size_t>(num.rows()));
  kernels::for_each_index(
      results.size(),
      [&](std::size_t i) {
        if (i < kStarts) {
          Rng rng(stream_seed(seed, 0x5eed, i));
          const std::vector<double> y0 = rng.normal_vector(static_cast<std::size_t>(rank));
          results[i] = ascend(num, den, Eigen::Map<const Eigen::VectorXd>(y0.data(), rank), {8, 32, 128, 512, 2048});
        } else {
          const LpResult lp = max_functional(den_con, num.row(static_cast<Eigen::Index>(i - kStarts)).transpose());
          if (lp.ok && lp.c.norm() > 0.0) results[i] = {lp.c.normalized(), sup_ratio(num, den_con, lp.c)};
          else results[i] = {Eigen::VectorXd::Zero(rank), 0.0};
        }
      },
      kernels::Exec::parallel);
  std::stable_sort(results.begin(), results.end(),
                   [](const AscentResult& a, const AscentResult& b) { return a.ratio > b.ratio; });
  results.resize(std::min<std::size_t>(results.size(), kCandidates));
  std::vector<double> fine(results.size(), 0.0);
  kernels::for_each_index(
      results.size(),
      [&](std::size_t i) {
        if (results[i].ratio <= 0.0) return;
        const Eigen::VectorXd c = basis * results[i].y;
        const RealPolynomial chi = space.polynomial(std::vector<double>(c.data(), c.data() + c.size()));
        SupOptions so;
        so.exec = kernels::Exec::serial;
        fine[i] = winf_seminorm_local(chi, elem.cell(), q, so) / winf_seminorm_local(chi, elem.cell(), p, so);
      },
      kernels::Exec::parallel);
  std::size_t best = 0;
  for (std::size_t i = 1; i < fine.size(); ++i)
    if (fine[i] > fine[best]) best = i;

  const Eigen::VectorXd c = basis * results[best].y;
  e.extremal.assign(c.data(), c.data() + c.size());
  e.value = fine[best] * std::pow(h, q - p);
  return e;
}

ConstantEstimate estimate_l2_linf_constant(const FiniteElement& elem, int p) {
  if (p < 0 || p > elem.degree()) throw std::invalid_argument("L2-to-sup estimate needs 0 <= p <= k");
  ConstantEstimate e = base_estimate(elem, ConstantKind::c_diamond);
  e.p = p;
  e.q = p;
  e.s = Flavor::linf;
  e.method = EstimateMethod::sampled;
  e.lower_bound = true;
  const PolySpace& space = elem.space();
  const Eigen::MatrixXd w = whitening(seminorm_gram(elem, p));
  // For a fixed derivative functional l, max (l.c)^2 / c^T G c = |W^T l|^2 on
  // the complement of G's null space; l vanishes on that null space.
  const std::vector<Point> pts = local_grid(elem.cell(), 2 * kDefaultResolution - 1);
  const Eigen::MatrixXd rows = derivative_rows(space, pts, p) * std::pow(elem.frame().scale, -p);
  const Eigen::MatrixXd proj = rows * w;
  Eigen::Index arg = 0;
  const double best = proj.rowwise().squaredNorm().maxCoeff(&arg);
  e.value = std::sqrt(best) * std::pow(elem.diameter(), 0.5 * elem.dim());
  const Eigen::VectorXd c = w * (w.transpose() * rows.row(arg).transpose());
  e.extremal.assign(c.data(), c.data() + c.size());
  return e;
}

double interpolation_ratio(const FiniteElement& elem, const SmoothField& zeta, int ell) {
  const int k = elem.degree();
  const auto pi = interpolant_field(elem, zeta);
  const auto err = difference(std::shared_ptr<const SmoothField>(&zeta, [](const SmoothField*) {}), pi);
  const double num = winf_seminorm(*err, elem.cell(), ell);
  const double den = winf_seminorm(zeta, elem.cell(), k + 1) * std::pow(elem.diameter(), k + 1 - ell);
  if (den <= 0.0) {
    if (num <= 1e-10) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  return num / den;
}

RateStudy interpolation_rate_study(const FiniteElement& elem, const SmoothField& f, int ell, int levels, double d) {
  if (levels < 3) throw std::invalid_argument("rate study needs at least three levels");
  RateStudy out;
  out.predicted = elem.degree() + 1 - ell;
  const auto fp = std::shared_ptr<const SmoothField>(&f, [](const SmoothField*) {});
  for (int i = 0; i < levels; ++i) {
    const double h = d * std::ldexp(1.0, -i);
    const FiniteElement e = element_with_diameter(elem, h);
    const auto err = difference(fp, interpolant_field(e, f));
    out.values.emplace_back(h, winf_seminorm(*err, e.cell(), ell));
  }
  if (usable_points(out.values, true, 1e-13) >= 3) {
    out.fit = fit_rate(out.values, true, 1e-13);
    out.pass = out.fit->slope >= out.predicted - 0.15;
  }
  return out;
}

FieldPtr transcendental_test_field(int dim) {
  const std::vector<double> freq{1.3, 0.9, 1.1};
  const std::vector<double> phase{0.4, 0.7, 0.2};
  return std::make_shared<SinusoidField>(std::vector<double>(freq.begin(), freq.begin() + dim),
                                         std::vector<double>(phase.begin(), phase.begin() + dim));
}

ConstantEstimate estimate_interp_constant(const FiniteElement& elem, int ell, int trials, std::uint64_t seed) {
  const int k = elem.degree();
  if (ell < 0 || ell > k + 1) throw std::invalid_argument("interpolation estimate needs 0 <= ell <= k + 1");
  if (trials < 1) throw std::invalid_argument("interpolation estimate needs at least one trial");
  ConstantEstimate e = base_estimate(elem, ConstantKind::c_flat);
  e.p = ell;
  e.q = k + 1;
  e.s = Flavor::linf;
  e.method = EstimateMethod::sampled;
  e.lower_bound = true;
  const int N = elem.dim();
  const auto monomials = indices_up_to(N, k + 2);

  std::vector<double> ratios(static_cast<std::size_t>(trials));
  kernels::for_each_index(
      static_cast<std::size_t>(trials),
      [&](std::size_t t) {
        Rng rng(stream_seed(seed, 0xf1a7, t));
        RealPolynomial poly(N);
        for (const auto& a : monomials) poly.add_term(a, rng.normal());
        Point center(static_cast<std::size_t>(N));
        for (auto& c : center) c = rng.uniform();
        const double amp = rng.normal();
        auto window = std::make_shared<Window>(WindowFamily::cosine, center, 0.5, k + 2);
        auto local = std::make_shared<LinearCombinationField>(
            std::vector<std::pair<double, FieldPtr>>{{1.0, make_polynomial_field(poly)}, {amp, window}});
        const FieldPtr zeta = make_framed_field(local, elem.frame());
        ratios[t] = interpolation_ratio(elem, *zeta, ell);
      },
      kernels::Exec::parallel);
  for (double r : ratios) e.value = std::max(e.value, r);

  const RateStudy study = interpolation_rate_study(elem, *transcendental_test_field(N), ell);
  e.rate = study.fit;
  e.rate_ok = study.pass;
  return e;
}

std::string constants_csv_header() { return "which,family,k,N,p,q,s,method,value,degenerate_flag\n"; }

std::string constants_csv_row(const ConstantEstimate& e) {
  char value[32];
  std::snprintf(value, sizeof value, "%.17g", e.value);
  return to_string(e.which) + "," + to_string(e.family) + "," + std::to_string(e.k) + "," + std::to_string(e.dim) +
         "," + std::to_string(e.p) + "," + std::to_string(e.q) + "," + to_string(e.s) + "," + to_string(e.method) +
         "," + value + "," + (e.degenerate ? "1" : "0") + "\n";
}

}  // namespace superapprox
