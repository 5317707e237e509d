#pragma once

// Ciarlet triples (K, P, N) on similarity images of reference cells, and the
// nodal interpolation operator.
//
// Interpolants are returned in the element's local coordinates
// x_hat = (x - frame.origin) / frame.scale. On small cells this keeps the
// coefficients O(1) instead of expanding around the global origin.

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "superapprox/field.hpp"
#include "superapprox/geometry.hpp"
#include "superapprox/polyalg.hpp"

namespace superapprox {

enum class SpaceFamily { total_degree, tensor_degree };

struct PolySpace {
  int dim = 1;
  int degree = 0;
  SpaceFamily family = SpaceFamily::total_degree;
  std::vector<MultiIndex> basis;  // monomials, graded-lex

  static PolySpace make(int dim, int degree, SpaceFamily family);
  std::size_t size() const { return basis.size(); }
  /// Largest total degree of a basis monomial.
  int max_total_degree() const;
  RealPolynomial polynomial(std::span<const double> coefficients) const;
};

/// Point value (derivative = 0) or point derivative functional.
struct NodalVariable {
  Point point;  // physical location
  MultiIndex derivative;
};

enum class ElementFamily { lagrange_simplex, lagrange_box, hermite_1d };

std::string to_string(ElementFamily f);
ElementFamily element_family_from_string(const std::string& s);

/// Nodal matrix in the local frame, factored once and shared between scaled copies.
struct NodalSystem;

class FiniteElement {
 public:
  FiniteElement(ElementFamily family, Cell cell, PolySpace space, std::vector<NodalVariable> nodes);

  ElementFamily family() const { return family_; }
  const Cell& cell() const { return cell_; }
  const PolySpace& space() const { return space_; }
  const std::vector<NodalVariable>& nodes() const { return nodes_; }
  int dim() const { return cell_.dim; }
  int degree() const { return space_.degree; }
  double diameter() const { return cell_.diameter; }
  const Frame& frame() const { return cell_.frame; }
  /// 2-norm condition number of the local nodal matrix; infinity when singular.
  double nodal_matrix_condition() const { return condition_; }
  bool unisolvent() const;
  int max_nodal_derivative_order() const;

  /// Same element contracted about its centroid.
  FiniteElement scaled(double factor) const;

 private:
  friend RealPolynomial interpolate(const FiniteElement&, const SmoothField&);

  ElementFamily family_;
  Cell cell_;
  PolySpace space_;
  std::vector<NodalVariable> nodes_;
  double condition_ = 0.0;
  std::shared_ptr<const NodalSystem> system_;
};

/// Throws std::invalid_argument for an unsupported (family, k, N) and
/// std::runtime_error if the nodal matrix is numerically singular.
FiniteElement build_element(ElementFamily family, int degree, int dim);

/// Pi_K f in local coordinates. Throws if f's jets do not reach the nodal
/// derivative order or the element is not unisolvent.
RealPolynomial interpolate(const FiniteElement& elem, const SmoothField& f);
/// Pi_K f as a field on the physical cell.
FieldPtr interpolant_field(const FiniteElement& elem, const SmoothField& f);

/// Applies every nodal variable to f (local-frame values, as used by the solve).
std::vector<double> apply_nodal_variables(const FiniteElement& elem, const SmoothField& f);

FiniteElement scale_element(const FiniteElement& elem, double factor);
/// Similar copy of `elem` about the reference centroid with diameter h.
FiniteElement element_with_diameter(const FiniteElement& elem, double h);

double unisolvence_check(const FiniteElement& elem);

/// Condition number of the nodal matrix formed by `nodes` over `space` in the
/// frame of `cell`; infinity when singular.
double nodal_condition(const Cell& cell, const PolySpace& space, const std::vector<NodalVariable>& nodes);

inline constexpr double kNodalTolerance = 1e-9;

struct ElementDescriptor {
  ElementFamily family = ElementFamily::lagrange_simplex;
  int degree = 1;
  int dim = 1;
  double scale = 1.0;

  FiniteElement build() const;
};

nlohmann::json to_json(const ElementDescriptor& d);
ElementDescriptor element_descriptor_from_json(const nlohmann::json& j);

/// Elements the library supports (P_k simplex N<=3 k<=4, Q_k box N<=2 k<=3, Hermite cubic).
std::vector<ElementDescriptor> element_catalog();
/// The N <= 2, k <= 3 subset used by the acceptance runs.
std::vector<ElementDescriptor> desk_catalog();

}  // namespace superapprox
