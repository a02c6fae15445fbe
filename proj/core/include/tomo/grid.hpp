#pragma once

#include <vector>

#include "tomo/common.hpp"

namespace tomo {

/// Uniform node grid over a box in R^n, n in {2,3}. Nodes sit at
/// origin + i*spacing per axis; spectral operators treat the box as one
/// period of a torus.
struct Grid {
  std::vector<int> shape;
  std::vector<double> spacing;
  std::vector<double> origin;

  Grid() = default;
  Grid(std::vector<int> shape_, std::vector<double> spacing_, std::vector<double> origin_);

  /// Box [-half_extent, half_extent]^n sampled with `count` nodes per axis.
  static Grid centered(int dim, int count, double half_extent);

  int dim() const { return static_cast<int>(shape.size()); }
  std::size_t node_count() const;
  double coord(int axis, int index) const {
    return origin[static_cast<std::size_t>(axis)] +
           index * spacing[static_cast<std::size_t>(axis)];
  }
  Vec node(std::size_t flat) const;
  double min_spacing() const;
  double cell_volume() const;
  /// Largest |corner| of the box; every hyperplane with |p| beyond this
  /// misses the grid.
  double circumradius() const;

  bool operator==(const Grid&) const = default;

  void validate() const;  // throws ShapeError on malformed grids
};

}  // namespace tomo
