#include "tomo/grid.hpp"

#include <algorithm>
#include <cmath>

namespace tomo {

Grid::Grid(std::vector<int> shape_, std::vector<double> spacing_, std::vector<double> origin_)
    : shape(std::move(shape_)), spacing(std::move(spacing_)), origin(std::move(origin_)) {
  validate();
}

Grid Grid::centered(int dim, int count, double half_extent) {
  if (count < 2) throw ShapeError("Grid::centered: need at least 2 nodes per axis");
  const double h = 2.0 * half_extent / (count - 1);
  return Grid(std::vector<int>(static_cast<std::size_t>(dim), count),
              std::vector<double>(static_cast<std::size_t>(dim), h),
              std::vector<double>(static_cast<std::size_t>(dim), -half_extent));
}

std::size_t Grid::node_count() const {
  std::size_t n = 1;
  for (int s : shape) n *= static_cast<std::size_t>(s);
  return n;
}

Vec Grid::node(std::size_t flat) const {
  Vec x(shape.size());
  for (int a = dim() - 1; a >= 0; --a) {
    const auto s = static_cast<std::size_t>(shape[static_cast<std::size_t>(a)]);
    x[static_cast<std::size_t>(a)] = coord(a, static_cast<int>(flat % s));
    flat /= s;
  }
  return x;
}

double Grid::min_spacing() const {
  return *std::min_element(spacing.begin(), spacing.end());
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (double h : spacing) v *= h;
  return v;
}

double Grid::circumradius() const {
  double r2 = 0.0;
  for (int a = 0; a < dim(); ++a) {
    const double lo = std::abs(coord(a, 0));
    const double hi = std::abs(coord(a, shape[static_cast<std::size_t>(a)] - 1));
    const double m = std::max(lo, hi);
    r2 += m * m;
  }
  return std::sqrt(r2);
}

void Grid::validate() const {
  if (dim() < 2 || dim() > 3) throw ShapeError("Grid: dim must be 2 or 3");
  if (spacing.size() != shape.size() || origin.size() != shape.size())
    throw ShapeError("Grid: shape/spacing/origin size mismatch");
  for (int s : shape)
    if (s < 8) throw ShapeError("Grid: need at least 8 nodes per axis");
  for (double h : spacing)
    if (!(h > 0.0)) throw ShapeError("Grid: spacing must be positive");
}

}  // namespace tomo
