#pragma once

// Smooth fields evaluated through Taylor jets. Every interpoland, error
// function and window power in the library is one of these.

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "superapprox/geometry.hpp"
#include "superapprox/jet.hpp"
#include "superapprox/polyalg.hpp"

namespace superapprox {

class SmoothField {
 public:
  virtual ~SmoothField() = default;
  virtual int dim() const = 0;
  /// Taylor jet at the physical point x.
  virtual Jet jet(std::span<const double> x, int order) const = 0;
  /// Highest order jet() supports.
  virtual int max_order() const { return kMaxJetOrder; }

  double value(std::span<const double> x) const { return jet(x, 0).value(); }
};

using FieldPtr = std::shared_ptr<const SmoothField>;

/// Polynomial in global coordinates.
class PolynomialField final : public SmoothField {
 public:
  explicit PolynomialField(RealPolynomial p) : p_(std::move(p)) {}
  int dim() const override { return p_.dim(); }
  Jet jet(std::span<const double> x, int order) const override;
  const RealPolynomial& polynomial() const { return p_; }

 private:
  RealPolynomial p_;
};

/// Polynomial given in the local coordinates of a frame: f(x) = p(to_local(x)).
class LocalPolynomialField final : public SmoothField {
 public:
  LocalPolynomialField(RealPolynomial local, Frame frame);
  int dim() const override { return p_.dim(); }
  Jet jet(std::span<const double> x, int order) const override;
  const RealPolynomial& local_polynomial() const { return p_; }
  const Frame& frame() const { return frame_; }

 private:
  RealPolynomial p_;
  Frame frame_;
  // Monomial exponents and coefficients flattened for fast Taylor expansion.
  std::vector<std::vector<int>> exps_;
  std::vector<double> coefs_;
};

/// prod_i sin(freq_i * x_i + phase_i): the transcendental test field.
class SinusoidField final : public SmoothField {
 public:
  SinusoidField(std::vector<double> freq, std::vector<double> phase);
  int dim() const override { return static_cast<int>(freq_.size()); }
  Jet jet(std::span<const double> x, int order) const override;

 private:
  std::vector<double> freq_;
  std::vector<double> phase_;
};

class ConstantField final : public SmoothField {
 public:
  ConstantField(int dim, double value) : dim_(dim), value_(value) {}
  int dim() const override { return dim_; }
  Jet jet(std::span<const double>, int order) const override { return Jet::constant(dim_, order, value_); }

 private:
  int dim_;
  double value_;
};

/// sum_i w_i f_i
class LinearCombinationField final : public SmoothField {
 public:
  explicit LinearCombinationField(std::vector<std::pair<double, FieldPtr>> terms);
  int dim() const override { return dim_; }
  int max_order() const override;
  Jet jet(std::span<const double> x, int order) const override;

 private:
  int dim_;
  std::vector<std::pair<double, FieldPtr>> terms_;
};

/// prod_i f_i^{n_i}
class ProductField final : public SmoothField {
 public:
  explicit ProductField(std::vector<std::pair<FieldPtr, int>> factors);
  int dim() const override { return dim_; }
  int max_order() const override;
  Jet jet(std::span<const double> x, int order) const override;

 private:
  int dim_;
  std::vector<std::pair<FieldPtr, int>> factors_;
};

/// A field written in the local coordinates of a frame: f(x) = g(to_local(x)).
class FramedField final : public SmoothField {
 public:
  FramedField(FieldPtr local, Frame frame);
  int dim() const override { return local_->dim(); }
  int max_order() const override { return local_->max_order(); }
  Jet jet(std::span<const double> x, int order) const override;

 private:
  FieldPtr local_;
  Frame frame_;
};

FieldPtr make_polynomial_field(RealPolynomial p);
FieldPtr make_local_polynomial_field(RealPolynomial local, const Frame& frame);
FieldPtr make_constant_field(int dim, double value);
FieldPtr make_framed_field(FieldPtr local, const Frame& frame);
FieldPtr difference(FieldPtr a, FieldPtr b);
FieldPtr shifted(FieldPtr a, double shift);
FieldPtr scaled(FieldPtr a, double factor);
FieldPtr product(std::vector<std::pair<FieldPtr, int>> factors);

}  // namespace superapprox
