#pragma once

// Empirical constants of the element-level assumptions:
//   inverse estimate     |chi|_{W^q_s} <= C_sharp h^{p-q} |chi|_{W^p_s}
//   L2 -> Loo estimate   |chi|_{W^p_oo} <= C_diamond h^{-N/2} |chi|_{H^p}
//   interpolation        |z - Pi z|_{W^l_oo} <= C_flat h^{k+1-l} |z|_{W^{k+1}_oo}
//
// s = 2 inverse constants are exact (generalized eigenproblem of the seminorm
// Gram matrices). Everything involving a sup is sampled and therefore a lower
// bound; `lower_bound` says which.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "superapprox/elements.hpp"
#include "superapprox/norms.hpp"
#include "superapprox/rates.hpp"

namespace superapprox {

enum class ConstantKind { c_flat, c_sharp, c_diamond };
enum class EstimateMethod { eigen, sampled };

std::string to_string(ConstantKind k);
std::string to_string(EstimateMethod m);

struct ConstantEstimate {
  ConstantKind which = ConstantKind::c_sharp;
  int p = 0;
  int q = 0;
  Flavor s = Flavor::l2;
  double value = 0.0;
  EstimateMethod method = EstimateMethod::eigen;
  bool lower_bound = false;
  bool degenerate = false;
  ElementFamily family = ElementFamily::lagrange_simplex;
  int k = 0;
  int dim = 0;
  /// Local-frame coefficients of the maximizing polynomial (empty when degenerate).
  std::vector<double> extremal;
  /// Interpolation constants only: h-rate of the error for the test field.
  std::optional<RateFit> rate;
  bool rate_ok = true;
};

/// sum_{|alpha|=order} int_K d^alpha phi_a d^alpha phi_b over the local
/// monomial basis of the element, on the physical cell.
Eigen::MatrixXd seminorm_gram(const FiniteElement& elem, int order);

/// Throws std::invalid_argument unless 0 <= p < q <= k + 1.
ConstantEstimate estimate_inverse_constant(const FiniteElement& elem, int p, int q, Flavor s,
                                           std::uint64_t seed = 0);

/// Throws std::invalid_argument unless 0 <= p <= k.
ConstantEstimate estimate_l2_linf_constant(const FiniteElement& elem, int p);

/// ratio |z - Pi z|_{W^l_oo} / (h^{k+1-l} |z|_{W^{k+1}_oo}) for one field; 0 when both vanish.
double interpolation_ratio(const FiniteElement& elem, const SmoothField& zeta, int ell);

struct RateStudy {
  std::vector<std::pair<double, double>> values;  // (h, |f - Pi f|_{W^l_oo})
  std::optional<RateFit> fit;
  double predicted = 0.0;
  bool pass = false;
};

/// Error of the nodal interpolant of a fixed field over diameters h_i = d 2^{-i}.
RateStudy interpolation_rate_study(const FiniteElement& elem, const SmoothField& f, int ell, int levels = 7,
                                   double d = 1.0);

/// Product of sinusoids used as the fixed transcendental field.
FieldPtr transcendental_test_field(int dim);

ConstantEstimate estimate_interp_constant(const FiniteElement& elem, int ell, int trials, std::uint64_t seed);

/// Columns: which,family,k,N,p,q,s,method,value,degenerate_flag
std::string constants_csv_header();
std::string constants_csv_row(const ConstantEstimate& e);

}  // namespace superapprox
