#include "superapprox/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace superapprox {

Point Frame::to_physical(std::span<const double> local) const {
  Point x(origin);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += scale * local[i];
  return x;
}

Point Frame::to_local(std::span<const double> physical) const {
  Point x(origin.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (physical[i] - origin[i]) / scale;
  return x;
}

Frame Frame::contracted(std::span<const double> center, double factor) const {
  Frame f;
  f.scale = scale * factor;
  f.origin.resize(origin.size());
  for (std::size_t i = 0; i < origin.size(); ++i) f.origin[i] = center[i] + factor * (origin[i] - center[i]);
  return f;
}

std::string to_string(CellKind k) { return k == CellKind::simplex ? "simplex" : "box"; }

double Cell::volume() const {
  double v = std::pow(frame.scale, dim);
  if (kind == CellKind::simplex)
    for (int i = 2; i <= dim; ++i) v /= i;
  return v;
}

Point Cell::centroid() const {
  Point c(static_cast<std::size_t>(dim), 0.0);
  for (const auto& v : vertices)
    for (int i = 0; i < dim; ++i) c[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i)];
  for (double& x : c) x /= static_cast<double>(vertices.size());
  return c;
}

bool Cell::contains_local(std::span<const double> local, double tol) const {
  double sum = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double x = local[static_cast<std::size_t>(i)];
    if (x < -tol) return false;
    if (kind == CellKind::box && x > 1.0 + tol) return false;
    sum += x;
  }
  return kind == CellKind::box || sum <= 1.0 + tol;
}

double max_pairwise_distance(const std::vector<Point>& pts) {
  double best = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < pts[a].size(); ++i) s += (pts[a][i] - pts[b][i]) * (pts[a][i] - pts[b][i]);
      best = std::max(best, std::sqrt(s));
    }
  return best;
}

Cell reference_cell(CellKind kind, int dim) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("cell dimension must be 1, 2 or 3");
  Cell c;
  c.kind = kind;
  c.dim = dim;
  c.frame = Frame::identity(dim);
  if (kind == CellKind::simplex) {
    c.vertices.emplace_back(static_cast<std::size_t>(dim), 0.0);
    for (int i = 0; i < dim; ++i) {
      Point v(static_cast<std::size_t>(dim), 0.0);
      v[static_cast<std::size_t>(i)] = 1.0;
      c.vertices.push_back(v);
    }
  } else {
    for (int mask = 0; mask < (1 << dim); ++mask) {
      Point v(static_cast<std::size_t>(dim), 0.0);
      for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = (mask >> i) & 1;
      c.vertices.push_back(v);
    }
  }
  c.diameter = max_pairwise_distance(c.vertices);
  return c;
}

Cell contract(const Cell& cell, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("contraction factor must be positive");
  const Point cen = cell.centroid();
  Cell out = cell;
  for (auto& v : out.vertices)
    for (int i = 0; i < cell.dim; ++i) {
      const auto k = static_cast<std::size_t>(i);
      v[k] = cen[k] + factor * (v[k] - cen[k]);
    }
  out.frame = cell.frame.contracted(cen, factor);
  out.diameter = max_pairwise_distance(out.vertices);
  return out;
}

Cell similar_cell(CellKind kind, int dim, double diameter) {
  const Cell ref = reference_cell(kind, dim);
  return contract(ref, diameter / ref.diameter);
}

}  // namespace superapprox
