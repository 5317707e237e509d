#include "superapprox/elements.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace superapprox {

struct NodalSystem {
  Eigen::MatrixXd matrix;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

namespace {

// d^alpha (x^beta) at x.
double monomial_derivative(const MultiIndex& beta, const MultiIndex& alpha, std::span<const double> x) {
  double v = 1.0;
  for (int i = 0; i < beta.dim(); ++i) {
    const int b = beta[i], a = alpha[i];
    if (a > b) return 0.0;
    for (int r = 0; r < a; ++r) v *= b - r;
    v *= std::pow(x[static_cast<std::size_t>(i)], b - a);
  }
  return v;
}

Eigen::MatrixXd local_nodal_matrix(const Cell& cell, const PolySpace& space, const std::vector<NodalVariable>& nodes) {
  Eigen::MatrixXd V(static_cast<Eigen::Index>(nodes.size()), static_cast<Eigen::Index>(space.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Point xl = cell.frame.to_local(nodes[i].point);
    for (std::size_t j = 0; j < space.size(); ++j)
      V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          monomial_derivative(space.basis[j], nodes[i].derivative, xl);
  }
  return V;
}

double condition_of(const Eigen::MatrixXd& V) {
  if (V.rows() != V.cols() || V.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V);
  const auto& s = svd.singularValues();
  const double smax = s(0), smin = s(s.size() - 1);
  if (!(smin > 1e-13 * smax)) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

std::vector<Point> simplex_lattice(int dim, int k) {
  std::vector<Point> pts;
  if (k == 0) {
    pts.emplace_back(static_cast<std::size_t>(dim), 1.0 / (dim + 1));
    return pts;
  }
  for (const auto& a : indices_up_to(dim, k)) {
    Point p(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) p[static_cast<std::size_t>(i)] = static_cast<double>(a[i]) / k;
    pts.push_back(p);
  }
  return pts;
}

std::vector<Point> box_lattice(int dim, int k) {
  std::vector<Point> pts;
  if (k == 0) {
    pts.emplace_back(static_cast<std::size_t>(dim), 0.5);
    return pts;
  }
  std::vector<int> c(static_cast<std::size_t>(dim), 0);
  while (true) {
    Point p(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) p[static_cast<std::size_t>(i)] = static_cast<double>(c[static_cast<std::size_t>(i)]) / k;
    pts.push_back(p);
    int i = 0;
    while (i < dim && ++c[static_cast<std::size_t>(i)] > k) c[static_cast<std::size_t>(i++)] = 0;
    if (i == dim) break;
  }
  return pts;
}

}  // namespace

PolySpace PolySpace::make(int dim, int degree, SpaceFamily family) {
  if (degree < 0) throw std::invalid_argument("polynomial degree must be non-negative");
  PolySpace s;
  s.dim = dim;
  s.degree = degree;
  s.family = family;
  if (family == SpaceFamily::total_degree) {
    s.basis = indices_up_to(dim, degree);
  } else {
    for (const auto& a : indices_up_to(dim, dim * degree)) {
      bool ok = true;
      for (int i = 0; i < dim; ++i) ok = ok && a[i] <= degree;
      if (ok) s.basis.push_back(a);
    }
  }
  return s;
}

int PolySpace::max_total_degree() const {
  int d = 0;
  for (const auto& a : basis) d = std::max(d, a.order());
  return d;
}

RealPolynomial PolySpace::polynomial(std::span<const double> coefficients) const {
  if (coefficients.size() != basis.size()) throw std::invalid_argument("coefficient count differs from space dimension");
  RealPolynomial p(dim);
  for (std::size_t i = 0; i < basis.size(); ++i) p.add_term(basis[i], coefficients[i]);
  return p;
}

std::string to_string(ElementFamily f) {
  switch (f) {
    case ElementFamily::lagrange_simplex: return "lagrange-simplex";
    case ElementFamily::lagrange_box: return "lagrange-box";
    case ElementFamily::hermite_1d: return "hermite-1d";
  }
  return "unknown";
}

ElementFamily element_family_from_string(const std::string& s) {
  if (s == "lagrange-simplex") return ElementFamily::lagrange_simplex;
  if (s == "lagrange-box") return ElementFamily::lagrange_box;
  if (s == "hermite-1d") return ElementFamily::hermite_1d;
  throw std::invalid_argument("unknown element family '" + s + "'");
}

FiniteElement::FiniteElement(ElementFamily family, Cell cell, PolySpace space, std::vector<NodalVariable> nodes)
    : family_(family), cell_(std::move(cell)), space_(std::move(space)), nodes_(std::move(nodes)) {
  if (space_.dim != cell_.dim) throw std::invalid_argument("space and cell dimensions differ");
  for (const auto& n : nodes_) {
    if (static_cast<int>(n.point.size()) != cell_.dim || n.derivative.dim() != cell_.dim)
      throw std::invalid_argument("nodal variable dimension differs from cell dimension");
    if (!cell_.contains_local(cell_.frame.to_local(n.point), 1e-9))
      throw std::invalid_argument("nodal point lies outside the cell");
  }
  auto sys = std::make_shared<NodalSystem>();
  sys->matrix = local_nodal_matrix(cell_, space_, nodes_);
  condition_ = condition_of(sys->matrix);
  if (std::isfinite(condition_)) sys->lu.compute(sys->matrix);
  system_ = std::move(sys);
}

bool FiniteElement::unisolvent() const { return std::isfinite(condition_); }

int FiniteElement::max_nodal_derivative_order() const {
  int m = 0;
  for (const auto& n : nodes_) m = std::max(m, n.derivative.order());
  return m;
}

FiniteElement FiniteElement::scaled(double factor) const {
  FiniteElement out = *this;
  const Point cen = cell_.centroid();
  out.cell_ = contract(cell_, factor);
  for (auto& n : out.nodes_)
    for (std::size_t i = 0; i < n.point.size(); ++i) n.point[i] = cen[i] + factor * (n.point[i] - cen[i]);
  // Local coordinates of the nodes are unchanged, so the factored system carries over.
  return out;
}

FiniteElement build_element(ElementFamily family, int degree, int dim) {
  std::vector<NodalVariable> nodes;
  switch (family) {
    case ElementFamily::lagrange_simplex: {
      if (dim < 1 || dim > 3 || degree < 0 || degree > 4)
        throw std::invalid_argument("lagrange-simplex supports N in 1..3 and k in 0..4");
      Cell cell = reference_cell(CellKind::simplex, dim);
      for (auto& p : simplex_lattice(dim, degree)) nodes.push_back({p, MultiIndex(dim)});
      FiniteElement e(family, cell, PolySpace::make(dim, degree, SpaceFamily::total_degree), std::move(nodes));
      if (!e.unisolvent()) throw std::runtime_error("nodal matrix is numerically singular");
      return e;
    }
    case ElementFamily::lagrange_box: {
      if (dim < 1 || dim > 2 || degree < 0 || degree > 3)
        throw std::invalid_argument("lagrange-box supports N in 1..2 and k in 0..3");
      Cell cell = reference_cell(CellKind::box, dim);
      for (auto& p : box_lattice(dim, degree)) nodes.push_back({p, MultiIndex(dim)});
      FiniteElement e(family, cell, PolySpace::make(dim, degree, SpaceFamily::tensor_degree), std::move(nodes));
      if (!e.unisolvent()) throw std::runtime_error("nodal matrix is numerically singular");
      return e;
    }
    case ElementFamily::hermite_1d: {
      if (dim != 1 || degree != 3) throw std::invalid_argument("hermite-1d supports only N = 1, k = 3");
      Cell cell = reference_cell(CellKind::simplex, 1);
      for (double x : {0.0, 1.0}) {
        nodes.push_back({Point{x}, MultiIndex{0}});
        nodes.push_back({Point{x}, MultiIndex{1}});
      }
      FiniteElement e(family, cell, PolySpace::make(1, 3, SpaceFamily::total_degree), std::move(nodes));
      if (!e.unisolvent()) throw std::runtime_error("nodal matrix is numerically singular");
      return e;
    }
  }
  throw std::invalid_argument("unknown element family");
}

std::vector<double> apply_nodal_variables(const FiniteElement& elem, const SmoothField& f) {
  if (f.dim() != elem.dim()) throw std::invalid_argument("field and element dimensions differ");
  const int need = elem.max_nodal_derivative_order();
  if (f.max_order() < need) throw std::invalid_argument("field jets do not reach the nodal derivative order");
  std::vector<double> b;
  b.reserve(elem.nodes().size());
  const double scale = elem.frame().scale;
  for (const auto& n : elem.nodes()) {
    const int r = n.derivative.order();
    const Jet j = f.jet(n.point, r);
    b.push_back(j.derivative(n.derivative) * std::pow(scale, r));
  }
  return b;
}

RealPolynomial interpolate(const FiniteElement& elem, const SmoothField& f) {
  if (!elem.unisolvent()) throw std::runtime_error("cannot interpolate: element is not unisolvent");
  const std::vector<double> b = apply_nodal_variables(elem, f);
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
  const Eigen::VectorXd c = elem.system_->lu.solve(rhs);
  return elem.space().polynomial(std::span<const double>(c.data(), static_cast<std::size_t>(c.size())));
}

FieldPtr interpolant_field(const FiniteElement& elem, const SmoothField& f) {
  return make_local_polynomial_field(interpolate(elem, f), elem.frame());
}

FiniteElement scale_element(const FiniteElement& elem, double factor) {
  if (!(factor > 0.0) || factor > 1.0) throw std::invalid_argument("scale factor must lie in (0, 1]");
  return elem.scaled(factor);
}

FiniteElement element_with_diameter(const FiniteElement& elem, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("diameter must be positive");
  const FiniteElement ref = elem.scaled(1.0 / elem.frame().scale);
  return ref.scaled(h / ref.diameter());
}

double unisolvence_check(const FiniteElement& elem) { return elem.nodal_matrix_condition(); }

double nodal_condition(const Cell& cell, const PolySpace& space, const std::vector<NodalVariable>& nodes) {
  return condition_of(local_nodal_matrix(cell, space, nodes));
}

FiniteElement ElementDescriptor::build() const {
  FiniteElement e = build_element(family, degree, dim);
  return scale == 1.0 ? e : scale_element(e, scale);
}

nlohmann::json to_json(const ElementDescriptor& d) {
  return {{"family", to_string(d.family)}, {"degree", d.degree}, {"dim", d.dim}, {"scale", d.scale}};
}

ElementDescriptor element_descriptor_from_json(const nlohmann::json& j) {
  ElementDescriptor d;
  d.family = element_family_from_string(j.at("family").get<std::string>());
  d.degree = j.at("degree").get<int>();
  d.dim = j.at("dim").get<int>();
  d.scale = j.value("scale", 1.0);
  return d;
}

std::vector<ElementDescriptor> element_catalog() {
  std::vector<ElementDescriptor> out;
  for (int N = 1; N <= 3; ++N)
    for (int k = 1; k <= 4; ++k) out.push_back({ElementFamily::lagrange_simplex, k, N, 1.0});
  for (int N = 1; N <= 2; ++N)
    for (int k = 1; k <= 3; ++k) out.push_back({ElementFamily::lagrange_box, k, N, 1.0});
  out.push_back({ElementFamily::hermite_1d, 3, 1, 1.0});
  return out;
}

std::vector<ElementDescriptor> desk_catalog() {
  std::vector<ElementDescriptor> out;
  for (const auto& d : element_catalog())
    if (d.dim <= 2 && d.degree <= 3) out.push_back(d);
  return out;
}

}  // namespace superapprox
