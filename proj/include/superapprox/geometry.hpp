#pragma once

#include <span>
#include <string>
#include <vector>

namespace superapprox {

using Point = std::vector<double>;

/// Similarity map x = origin + scale * x_hat from the unit reference cell.
struct Frame {
  Point origin;
  double scale = 1.0;

  static Frame identity(int dim) { return {Point(static_cast<std::size_t>(dim), 0.0), 1.0}; }

  int dim() const { return static_cast<int>(origin.size()); }
  Point to_physical(std::span<const double> local) const;
  Point to_local(std::span<const double> physical) const;
  /// This frame followed by a contraction by `factor` about `center`.
  Frame contracted(std::span<const double> center, double factor) const;
};

enum class CellKind { simplex, box };

std::string to_string(CellKind k);

/// A similarity image of the unit simplex conv{0, e_1, ..., e_N} or the unit box [0,1]^N.
struct Cell {
  CellKind kind = CellKind::simplex;
  int dim = 1;
  std::vector<Point> vertices;
  double diameter = 0.0;
  Frame frame;

  double volume() const;
  Point centroid() const;
  /// Reference-frame membership test with a small tolerance.
  bool contains_local(std::span<const double> local, double tol = 1e-12) const;
};

Cell reference_cell(CellKind kind, int dim);
double max_pairwise_distance(const std::vector<Point>& pts);
/// Contraction about the centroid; vertices, diameter and frame move together.
Cell contract(const Cell& cell, double factor);
/// Similar copy of the reference cell of the same kind, contracted about the
/// reference centroid so that its diameter equals `diameter`.
Cell similar_cell(CellKind kind, int dim, double diameter);

}  // namespace superapprox
