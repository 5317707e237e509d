#include "superapprox/field.hpp"

#include <cmath>
#include <stdexcept>

namespace superapprox {

namespace {

// shifted[i][e][a] = C(e, a) x_i^(e - a): the Taylor data of x_i^e at x_i.
using ShiftTable = std::vector<std::vector<std::vector<double>>>;

ShiftTable shift_table(std::span<const double> x, int max_exp) {
  ShiftTable t(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> pw(static_cast<std::size_t>(max_exp) + 1, 1.0);
    for (int e = 1; e <= max_exp; ++e) pw[static_cast<std::size_t>(e)] = pw[static_cast<std::size_t>(e) - 1] * x[i];
    t[i].resize(static_cast<std::size_t>(max_exp) + 1);
    for (int e = 0; e <= max_exp; ++e) {
      auto& row = t[i][static_cast<std::size_t>(e)];
      row.resize(static_cast<std::size_t>(e) + 1);
      for (int a = 0; a <= e; ++a)
        row[static_cast<std::size_t>(a)] = static_cast<double>(binomial(e, a)) * pw[static_cast<std::size_t>(e - a)];
    }
  }
  return t;
}

Jet polynomial_jet(const std::vector<std::vector<int>>& exps, const std::vector<double>& coefs, int dim,
                   std::span<const double> x, int order, double inv_scale) {
  Jet out(dim, order);
  int max_exp = 0;
  for (const auto& e : exps)
    for (int v : e) max_exp = std::max(max_exp, v);
  const ShiftTable t = shift_table(x, max_exp);
  const JetLayout& L = out.layout();
  for (std::size_t term = 0; term < exps.size(); ++term) {
    const auto& beta = exps[term];
    for (std::size_t k = 0; k < L.size(); ++k) {
      const MultiIndex& alpha = L.indices[k];
      double v = coefs[term];
      for (int i = 0; i < dim && v != 0.0; ++i) {
        const int b = beta[static_cast<std::size_t>(i)];
        const int a = alpha[i];
        v = a > b ? 0.0 : v * t[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
      }
      out[k] += v;
    }
  }
  if (inv_scale != 1.0) return out.scaled(inv_scale);
  return out;
}

void flatten(const RealPolynomial& p, std::vector<std::vector<int>>& exps, std::vector<double>& coefs) {
  for (const auto& [a, c] : p.terms()) {
    exps.push_back(a.components());
    coefs.push_back(c);
  }
}

}  // namespace

Jet PolynomialField::jet(std::span<const double> x, int order) const {
  std::vector<std::vector<int>> exps;
  std::vector<double> coefs;
  flatten(p_, exps, coefs);
  return polynomial_jet(exps, coefs, p_.dim(), x, order, 1.0);
}

LocalPolynomialField::LocalPolynomialField(RealPolynomial local, Frame frame)
    : p_(std::move(local)), frame_(std::move(frame)) {
  if (frame_.dim() != p_.dim()) throw std::invalid_argument("frame and polynomial dimensions differ");
  flatten(p_, exps_, coefs_);
}

Jet LocalPolynomialField::jet(std::span<const double> x, int order) const {
  const Point xl = frame_.to_local(x);
  return polynomial_jet(exps_, coefs_, p_.dim(), xl, order, 1.0 / frame_.scale);
}

SinusoidField::SinusoidField(std::vector<double> freq, std::vector<double> phase)
    : freq_(std::move(freq)), phase_(std::move(phase)) {
  if (freq_.size() != phase_.size() || freq_.empty()) throw std::invalid_argument("sinusoid frequency/phase mismatch");
}

Jet SinusoidField::jet(std::span<const double> x, int order) const {
  std::vector<std::vector<double>> factors(freq_.size());
  for (std::size_t i = 0; i < freq_.size(); ++i) {
    const double arg = freq_[i] * x[i] + phase_[i];
    const double s = std::sin(arg), c = std::cos(arg);
    // d^r/dx^r sin(a x + b) cycles through sin, cos, -sin, -cos times a^r.
    const double cycle[4] = {s, c, -s, -c};
    double scale = 1.0;
    for (int r = 0; r <= order; ++r) {
      factors[i].push_back(cycle[r % 4] * scale / static_cast<double>(factorial(r)));
      scale *= freq_[i];
    }
  }
  return tensor_product_jet(factors, order);
}

LinearCombinationField::LinearCombinationField(std::vector<std::pair<double, FieldPtr>> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("empty linear combination");
  dim_ = terms_.front().second->dim();
  for (const auto& [w, f] : terms_)
    if (f->dim() != dim_) throw std::invalid_argument("field dimension mismatch");
}

int LinearCombinationField::max_order() const {
  int m = kMaxJetOrder;
  for (const auto& [w, f] : terms_) m = std::min(m, f->max_order());
  return m;
}

Jet LinearCombinationField::jet(std::span<const double> x, int order) const {
  Jet out(dim_, order);
  for (const auto& [w, f] : terms_) out += f->jet(x, order) * w;
  return out;
}

ProductField::ProductField(std::vector<std::pair<FieldPtr, int>> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("empty product");
  dim_ = factors_.front().first->dim();
  for (const auto& [f, n] : factors_) {
    if (f->dim() != dim_) throw std::invalid_argument("field dimension mismatch");
    if (n < 0) throw std::invalid_argument("negative power in product field");
  }
}

int ProductField::max_order() const {
  int m = kMaxJetOrder;
  for (const auto& [f, n] : factors_)
    if (n > 0) m = std::min(m, f->max_order());
  return m;
}

Jet ProductField::jet(std::span<const double> x, int order) const {
  Jet out = Jet::constant(dim_, order, 1.0);
  for (const auto& [f, n] : factors_) {
    if (n == 0) continue;
    out = out * f->jet(x, order).pow(n);
  }
  return out;
}

FramedField::FramedField(FieldPtr local, Frame frame) : local_(std::move(local)), frame_(std::move(frame)) {
  if (local_->dim() != frame_.dim()) throw std::invalid_argument("frame and field dimensions differ");
}

Jet FramedField::jet(std::span<const double> x, int order) const {
  return local_->jet(frame_.to_local(x), order).scaled(1.0 / frame_.scale);
}

FieldPtr make_framed_field(FieldPtr local, const Frame& frame) {
  return std::make_shared<FramedField>(std::move(local), frame);
}

FieldPtr make_polynomial_field(RealPolynomial p) { return std::make_shared<PolynomialField>(std::move(p)); }

FieldPtr make_local_polynomial_field(RealPolynomial local, const Frame& frame) {
  return std::make_shared<LocalPolynomialField>(std::move(local), frame);
}

FieldPtr make_constant_field(int dim, double value) { return std::make_shared<ConstantField>(dim, value); }

FieldPtr difference(FieldPtr a, FieldPtr b) {
  return std::make_shared<LinearCombinationField>(
      std::vector<std::pair<double, FieldPtr>>{{1.0, std::move(a)}, {-1.0, std::move(b)}});
}

FieldPtr shifted(FieldPtr a, double shift) {
  const int dim = a->dim();
  return std::make_shared<LinearCombinationField>(
      std::vector<std::pair<double, FieldPtr>>{{1.0, std::move(a)}, {1.0, make_constant_field(dim, shift)}});
}

FieldPtr scaled(FieldPtr a, double factor) {
  return std::make_shared<LinearCombinationField>(std::vector<std::pair<double, FieldPtr>>{{factor, std::move(a)}});
}

FieldPtr product(std::vector<std::pair<FieldPtr, int>> factors) {
  return std::make_shared<ProductField>(std::move(factors));
}

}  // namespace superapprox
