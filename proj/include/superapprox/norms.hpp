#pragma once

// Quadrature on reference cells and the Sobolev seminorms
//   |f|_{H^p(K)}     = ( sum_{|alpha|=p} int_K (d^alpha f)^2 )^{1/2}
//   |f|_{W^p_oo(K)}  = max_{|alpha|=p} sup_K |d^alpha f|
// Multi-indices are summed without multinomial weights. The sup is sampled on
// a lattice and checked against one doubling of the lattice.

#include <stdexcept>
#include <vector>

#include "superapprox/field.hpp"
#include "superapprox/geometry.hpp"
#include "superapprox/kernels.hpp"
#include "superapprox/polyalg.hpp"

namespace superapprox {

inline constexpr int kMaxQuadratureDegree = 40;
inline constexpr int kDefaultResolution = 64;

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureRule {
  CellKind kind = CellKind::simplex;
  int dim = 1;
  std::vector<Point> points;
  std::vector<double> weights;
  int exactness = 0;
};

/// Gauss-Legendre nodes and weights on [0, 1].
QuadratureRule gauss_legendre(int npoints);

/// Cached rule on the unit reference cell, exact for total degree `degree`.
const QuadratureRule& reference_quadrature(CellKind kind, int dim, int degree);

/// The reference rule pushed forward to `cell` (weights carry the Jacobian).
QuadratureRule build_quadrature(const Cell& cell, int degree);

/// Lattice of `resolution` points per axis on the bounding box of the
/// reference cell, restricted to the cell, mapped to physical coordinates.
std::vector<Point> sample_grid(const Cell& cell, int resolution);

/// Exact for polynomials in global coordinates.
double h_seminorm(const RealPolynomial& f, const Cell& cell, int order);
/// Polynomial given in the cell's local coordinates.
double h_seminorm_local(const RealPolynomial& local, const Cell& cell, int order);

struct FieldSeminormOptions {
  int base_degree = 24;
  double rel_tol = 1e-8;
  double abs_floor = 1e-13;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// Two successive quadrature degrees must agree; throws ConvergenceError otherwise.
double h_seminorm(const SmoothField& f, const Cell& cell, int order, const FieldSeminormOptions& opt = {});

struct SupOptions {
  int resolution = kDefaultResolution;
  double rel_tol = 0.01;
  double abs_floor = 1e-13;
  kernels::Exec exec = kernels::Exec::parallel;
};

double winf_seminorm(const RealPolynomial& f, const Cell& cell, int order, const SupOptions& opt = {});
double winf_seminorm_local(const RealPolynomial& local, const Cell& cell, int order, const SupOptions& opt = {});
/// Sampled sup with one nested doubling (M -> 2M - 1); throws ConvergenceError
/// when the two disagree by more than rel_tol.
double winf_seminorm(const SmoothField& f, const Cell& cell, int order, const SupOptions& opt = {});

/// L2-based (H^p) or sup-based (W^p_oo) seminorm.
enum class Flavor { l2, linf };
std::string to_string(Flavor s);
double seminorm(const SmoothField& f, const Cell& cell, int order, Flavor s);
double seminorm_local(const RealPolynomial& local, const Cell& cell, int order, Flavor s);

}  // namespace superapprox
