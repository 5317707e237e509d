#pragma once

// Truncated Taylor jets in dense storage. A jet of order J at a point holds
// c_alpha = d^alpha f / alpha! for every |alpha| <= J, laid out in graded-lex
// order, so the order-J' part of an order-J jet is a prefix.

#include <span>
#include <vector>

#include "superapprox/polyalg.hpp"

namespace superapprox {

inline constexpr int kMaxJetDim = 3;
inline constexpr int kMaxJetOrder = 12;

struct JetLayout {
  int dim = 0;
  int order = 0;
  std::vector<MultiIndex> indices;
  std::vector<double> factorials;      // alpha! per index
  std::vector<std::size_t> level_begin; // first index of each order, plus end
  // (a, b, c) with indices[a] + indices[b] == indices[c]
  struct Triple {
    std::uint32_t a, b, c;
  };
  std::vector<Triple> products;

  std::size_t size() const { return indices.size(); }
  std::size_t index_of(const MultiIndex& alpha) const;
};

/// Shared immutable layout for (dim, order); dim <= kMaxJetDim, order <= kMaxJetOrder.
const JetLayout& jet_layout(int dim, int order);

class Jet {
 public:
  Jet(int dim, int order);
  Jet(int dim, int order, std::vector<double> coefficients);

  static Jet constant(int dim, int order, double value);

  int dim() const { return layout_->dim; }
  int order() const { return layout_->order; }
  const JetLayout& layout() const { return *layout_; }
  std::size_t size() const { return c_.size(); }

  double value() const { return c_[0]; }
  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }
  std::span<const double> coefficients() const { return c_; }

  double coefficient(const MultiIndex& alpha) const { return c_[layout_->index_of(alpha)]; }
  /// d^alpha f = alpha! * c_alpha.
  double derivative(const MultiIndex& alpha) const;
  double derivative(std::size_t index) const { return c_[index] * layout_->factorials[index]; }

  /// The first `order + 1` levels.
  Jet truncated(int order) const;
  /// Multiplies the order-r level by factor^r (pullback under x = b + factor * x_hat).
  Jet scaled(double factor) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  /// Truncated Cauchy product at the smaller of the two orders.
  friend Jet operator*(const Jet& a, const Jet& b);

  Jet pow(int n) const;
  bool operator==(const Jet& o) const;

 private:
  const JetLayout* layout_;
  std::vector<double> c_;
};

/// Jet of prod_i g_i(x_i), given each factor's 1-D Taylor coefficients
/// (factors[i][r] = g_i^{(r)} / r!, r = 0..order).
Jet tensor_product_jet(const std::vector<std::vector<double>>& factors, int order);

}  // namespace superapprox
