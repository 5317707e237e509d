#include "superapprox/polyalg.hpp"

#include <numeric>

namespace superapprox {

std::uint64_t binomial(int n, int q) {
  if (n < 0 || q < 0) throw std::invalid_argument("binomial: negative argument");
  if (q > n) throw std::invalid_argument("binomial: q > n");
  q = std::min(q, n - q);
  std::uint64_t r = 1;
  for (int i = 1; i <= q; ++i) {
    // r * (n - q + i) / i stays integral at every step.
    const std::uint64_t num = static_cast<std::uint64_t>(n - q + i);
    const std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(i));
    const std::uint64_t rr = r / g;
    const std::uint64_t ii = static_cast<std::uint64_t>(i) / g;
    if (rr > UINT64_MAX / num) throw std::overflow_error("binomial overflow");
    r = rr * (num / ii);
  }
  return r;
}

std::uint64_t factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  if (n > 20) throw std::overflow_error("factorial overflow");
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

MultiIndex::MultiIndex(std::initializer_list<int> c) : c_(c) { check(); }
MultiIndex::MultiIndex(std::vector<int> c) : c_(std::move(c)) { check(); }

void MultiIndex::check() {
  order_ = 0;
  for (int v : c_) {
    if (v < 0) throw std::invalid_argument("multi-index components must be non-negative");
    order_ += v;
  }
}

MultiIndex MultiIndex::unit(int dim, int axis) {
  std::vector<int> c(static_cast<std::size_t>(dim), 0);
  c.at(static_cast<std::size_t>(axis)) = 1;
  return MultiIndex(std::move(c));
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int v : c_) f *= static_cast<double>(superapprox::factorial(v));
  return f;
}

bool MultiIndex::dominates(const MultiIndex& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("multi-index dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] < other.c_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (o.dim() != dim()) throw std::invalid_argument("multi-index dimension mismatch");
  std::vector<int> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return MultiIndex(std::move(c));
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  if (o.dim() != dim()) throw std::invalid_argument("multi-index dimension mismatch");
  std::vector<int> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
  return MultiIndex(std::move(c));
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.order() != b.order()) return a.order() < b.order();
  // Same degree: larger leading exponent first.
  return a.components() > b.components();
}

std::vector<MultiIndex> indices_of_order(int dim, int order) {
  std::vector<MultiIndex> out;
  std::vector<int> c(static_cast<std::size_t>(dim), 0);
  // Enumerate compositions of `order` into `dim` parts, leading part descending.
  auto rec = [&](auto&& self, int axis, int left) -> void {
    if (axis == dim - 1) {
      c[static_cast<std::size_t>(axis)] = left;
      out.emplace_back(c);
      return;
    }
    for (int v = left; v >= 0; --v) {
      c[static_cast<std::size_t>(axis)] = v;
      self(self, axis + 1, left - v);
    }
  };
  rec(rec, 0, order);
  return out;
}

std::vector<MultiIndex> indices_up_to(int dim, int max_order) {
  std::vector<MultiIndex> out;
  for (int r = 0; r <= max_order; ++r) {
    auto level = indices_of_order(dim, r);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

RealPolynomial to_double(const RationalPolynomial& p) {
  RealPolynomial out(p.dim());
  for (const auto& [a, c] : p.terms()) out.add_term(a, c.convert_to<double>());
  return out;
}

RealPolynomial compose_affine(const RealPolynomial& p, double scale, std::span<const double> shift) {
  const int dim = p.dim();
  if (static_cast<int>(shift.size()) != dim) throw std::invalid_argument("compose_affine: shift dimension mismatch");
  // (shift_i + scale x_i)^e expanded once per (axis, exponent).
  RealPolynomial out(dim);
  for (const auto& [a, c] : p.terms()) {
    RealPolynomial term = RealPolynomial::constant(dim, c);
    for (int i = 0; i < dim; ++i) {
      RealPolynomial lin = RealPolynomial::constant(dim, shift[static_cast<std::size_t>(i)]) +
                           RealPolynomial::variable(dim, i) * scale;
      term = multiply(term, power(lin, a[i]));
    }
    out += term;
  }
  return out;
}

std::vector<double> taylor_coefficients(const RealPolynomial& p, std::span<const double> x, int order) {
  const int dim = p.dim();
  const auto idx = indices_up_to(dim, order);
  std::vector<double> out(idx.size(), 0.0);
  for (const auto& [beta, c] : p.terms()) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const MultiIndex& alpha = idx[k];
      if (!beta.dominates(alpha)) continue;
      double v = c;
      for (int i = 0; i < dim; ++i) {
        v *= static_cast<double>(binomial(beta[i], alpha[i]));
        v *= std::pow(x[static_cast<std::size_t>(i)], beta[i] - alpha[i]);
      }
      out[k] += v;
    }
  }
  return out;
}

namespace {

Rational parse_rational(const nlohmann::json& c) {
  if (c.is_string()) return Rational(c.get<std::string>());
  if (c.is_number_integer()) return Rational(c.get<long long>());
  if (c.is_number()) {
    // Exact binary value of the double: v = mant * 2^exp with integral mant.
    int exp = 0;
    const double frac = std::frexp(c.get<double>(), &exp);
    const auto mant = static_cast<long long>(std::ldexp(frac, 53));
    Rational r(mant);
    exp -= 53;
    boost::multiprecision::cpp_int two_pow = boost::multiprecision::cpp_int(1) << std::abs(exp);
    return exp >= 0 ? r * Rational(two_pow) : r / Rational(two_pow);
  }
  throw std::invalid_argument("polynomial coefficient must be a string or a number");
}

template <class T, class F>
Polynomial<T> from_json_impl(const nlohmann::json& j, F&& coef) {
  Polynomial<T> p(j.at("dim").get<int>());
  for (const auto& t : j.at("terms")) {
    MultiIndex alpha(t.at("alpha").get<std::vector<int>>());
    if (alpha.dim() != p.dim()) throw std::invalid_argument("term multi-index length differs from dim");
    p.add_term(alpha, coef(t.at("coef")));
  }
  return p;
}

}  // namespace

RationalPolynomial rational_polynomial_from_json(const nlohmann::json& j) {
  return from_json_impl<Rational>(j, parse_rational);
}

RealPolynomial real_polynomial_from_json(const nlohmann::json& j) {
  return from_json_impl<double>(j, [](const nlohmann::json& c) {
    if (c.is_string()) return Rational(c.get<std::string>()).convert_to<double>();
    return c.get<double>();
  });
}

}  // namespace superapprox
