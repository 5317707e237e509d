#pragma once

// Multivariate polynomials over a sparse coefficient map, multi-indices and
// the small amount of combinatorics the rest of the library leans on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace superapprox {

using Rational = boost::multiprecision::cpp_rational;

inline int vee(int a, int b) { return std::max(a, b); }
inline int wedge(int a, int b) { return std::min(a, b); }

/// Exact binomial coefficient C(n, q). Throws std::invalid_argument for q > n
/// and std::overflow_error if the result does not fit in 64 bits.
std::uint64_t binomial(int n, int q);

std::uint64_t factorial(int n);

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim) : c_(static_cast<std::size_t>(dim), 0) {}
  MultiIndex(std::initializer_list<int> c);
  explicit MultiIndex(std::vector<int> c);

  static MultiIndex unit(int dim, int axis);

  int dim() const { return static_cast<int>(c_.size()); }
  int order() const { return order_; }
  int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& components() const { return c_; }

  /// alpha! = prod_i alpha_i!
  double factorial() const;
  /// True when every component of `other` is <= the matching one here.
  bool dominates(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& o) const;
  MultiIndex operator-(const MultiIndex& o) const;
  bool operator==(const MultiIndex& o) const { return c_ == o.c_; }

 private:
  void check();

  std::vector<int> c_;
  int order_ = 0;
};

/// Graded lexicographic order: total degree first, then x_1 exponent
/// descending, then x_2, ... (so 1 < x < y < x^2 < xy < y^2 in two variables).
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All multi-indices of dimension `dim` with order exactly `order`, graded-lex.
std::vector<MultiIndex> indices_of_order(int dim, int order);
/// All multi-indices with order <= `max_order`, graded-lex.
std::vector<MultiIndex> indices_up_to(int dim, int max_order);

template <class T>
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, T, GradedLex>;

  explicit Polynomial(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("polynomial dimension must be positive");
  }

  static Polynomial constant(int dim, const T& c) {
    Polynomial p(dim);
    p.add_term(MultiIndex(dim), c);
    return p;
  }
  static Polynomial monomial(const MultiIndex& alpha, const T& c = T(1)) {
    Polynomial p(alpha.dim());
    p.add_term(alpha, c);
    return p;
  }
  /// x_axis as a polynomial in `dim` variables.
  static Polynomial variable(int dim, int axis) { return monomial(MultiIndex::unit(dim, axis)); }

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [a, c] : terms_) d = std::max(d, a.order());
    return d;
  }

  T coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? T(0) : it->second;
  }

  /// Adds c * x^alpha, keeping the map free of zero coefficients.
  void add_term(const MultiIndex& alpha, const T& c) {
    if (alpha.dim() != dim_) throw std::invalid_argument("multi-index dimension mismatch");
    if (c == T(0)) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (it->second == T(0)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_dim(o);
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_dim(o);
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    if (s == T(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [a, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const { return *this * T(-1); }

  bool operator==(const Polynomial& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

  /// Evaluates at x (double arithmetic regardless of T).
  double operator()(std::span<const double> x) const;

 private:
  void check_dim(const Polynomial& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("polynomial dimension mismatch");
  }

  int dim_;
  Terms terms_;
};

using RationalPolynomial = Polynomial<Rational>;
using RealPolynomial = Polynomial<double>;

template <class T>
double to_double_coef(const T& c) {
  if constexpr (std::is_same_v<T, Rational>) {
    return c.template convert_to<double>();
  } else {
    return static_cast<double>(c);
  }
}

template <class T>
double Polynomial<T>::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("evaluation point dimension mismatch");
  double sum = 0.0;
  for (const auto& [a, c] : terms_) {
    double m = to_double_coef(c);
    for (int i = 0; i < dim_; ++i) m *= std::pow(x[static_cast<std::size_t>(i)], a[i]);
    sum += m;
  }
  return sum;
}

/// d^alpha p, exact in the coefficient type.
template <class T>
Polynomial<T> derive(const Polynomial<T>& p, const MultiIndex& alpha) {
  if (alpha.dim() != p.dim()) throw std::invalid_argument("derive: multi-index dimension mismatch");
  Polynomial<T> out(p.dim());
  for (const auto& [beta, c] : p.terms()) {
    if (!beta.dominates(alpha)) continue;
    T coef = c;
    for (int i = 0; i < p.dim(); ++i)
      for (int r = 0; r < alpha[i]; ++r) coef *= T(beta[i] - r);
    out.add_term(beta - alpha, coef);
  }
  return out;
}

template <class T>
Polynomial<T> multiply(const Polynomial<T>& p, const Polynomial<T>& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("multiply: dimension mismatch");
  Polynomial<T> out(p.dim());
  for (const auto& [a, ca] : p.terms())
    for (const auto& [b, cb] : q.terms()) out.add_term(a + b, ca * cb);
  return out;
}

template <class T>
Polynomial<T> power(const Polynomial<T>& p, int n) {
  if (n < 0) throw std::invalid_argument("power: negative exponent");
  Polynomial<T> out = Polynomial<T>::constant(p.dim(), T(1));
  for (int i = 0; i < n; ++i) out = multiply(out, p);
  return out;
}

/// Explicit exact-to-floating conversion.
RealPolynomial to_double(const RationalPolynomial& p);

/// q(x) = p(shift + scale * x), componentwise scale (one similarity factor).
RealPolynomial compose_affine(const RealPolynomial& p, double scale, std::span<const double> shift);

/// Taylor coefficients of p about x: c_alpha = d^alpha p(x) / alpha! for
/// |alpha| <= order, in graded-lex order of indices_up_to(dim, order).
std::vector<double> taylor_coefficients(const RealPolynomial& p, std::span<const double> x, int order);

template <class T>
nlohmann::json to_json(const Polynomial<T>& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [a, c] : p.terms()) {
    nlohmann::json t;
    t["alpha"] = a.components();
    if constexpr (std::is_same_v<T, Rational>) {
      t["coef"] = c.str();
    } else {
      t["coef"] = c;
    }
    terms.push_back(std::move(t));
  }
  return {{"dim", p.dim()}, {"terms", terms}};
}

/// Accepts coefficients written as rational strings ("3/4") or JSON numbers.
RationalPolynomial rational_polynomial_from_json(const nlohmann::json& j);
RealPolynomial real_polynomial_from_json(const nlohmann::json& j);

}  // namespace superapprox
