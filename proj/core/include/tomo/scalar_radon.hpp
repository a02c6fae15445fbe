#pragma once

#include <vector>

#include "tomo/frame.hpp"
#include "tomo/tensor_field.hpp"

namespace tomo {

/// Directions with their deterministic frames.
struct DirectionSet {
  int dim = 0;
  std::vector<Vec> directions;
  std::vector<Frame> frames;

  int count() const { return static_cast<int>(directions.size()); }

  /// n = 2: angles i*pi/count on [0, pi).
  static DirectionSet half_circle(int count);
  /// n = 3: Fibonacci points on the upper hemisphere (no antipodal pairs).
  static DirectionSet hemisphere(int count);
  /// Explicit directions (frames derived via frame_of).
  static DirectionSet from_directions(const std::vector<Vec>& dirs);
};

/// Symmetric signed-offset samples p in [-radius, radius].
struct PGrid {
  int count = 0;
  double radius = 0.0;

  double spacing() const { return 2.0 * radius / (count - 1); }
  double p(int i) const { return -radius + i * spacing(); }

  /// Covers the grid circumradius; sample step matches the grid spacing.
  static PGrid for_grid(const Grid& grid, double pad = 1.02);

  bool operator==(const PGrid&) const = default;
};

/// Scalar hyperplane data indexed by (direction, offset).
struct Sinogram {
  DirectionSet dirs;
  PGrid pgrid;
  std::vector<double> data;  // [d * pgrid.count + ip]

  Sinogram() = default;
  Sinogram(DirectionSet d, PGrid p)
      : dirs(std::move(d)), pgrid(p),
        data(static_cast<std::size_t>(dirs.count()) * static_cast<std::size_t>(pgrid.count), 0.0) {}

  double at(int d, int ip) const {
    return data[static_cast<std::size_t>(d) * static_cast<std::size_t>(pgrid.count) +
                static_cast<std::size_t>(ip)];
  }
  double& at(int d, int ip) {
    return data[static_cast<std::size_t>(d) * static_cast<std::size_t>(pgrid.count) +
                static_cast<std::size_t>(ip)];
  }
  std::span<const double> row(int d) const {
    return {data.data() + static_cast<std::size_t>(d) * static_cast<std::size_t>(pgrid.count),
            static_cast<std::size_t>(pgrid.count)};
  }
  std::span<double> row(int d) {
    return {data.data() + static_cast<std::size_t>(d) * static_cast<std::size_t>(pgrid.count),
            static_cast<std::size_t>(pgrid.count)};
  }

  Sinogram& operator+=(const Sinogram& o);
  Sinogram& operator-=(const Sinogram& o);
  Sinogram& operator*=(double s);
  double max_abs() const;
  double l2() const;  // sqrt(sum of squares * dp), direction-averaged
};

/// Quadrature controls shared by every hyperplane transform.
struct QuadratureSpec {
  double step_factor = 0.25;          // integration step = factor * min grid spacing
  double boundary_tol = kBoundaryTol; // decay precondition; kNoDecayCheck disables
  int interp_order = 1;               // 1: multilinear; 3: 4-point cubic (n = 2 only)
};

/// Hyperplane integrals of a scalar field (rank-0 TensorField), trapezoidal
/// in-plane quadrature with multilinear interpolation.
Sinogram radon_forward(const TensorField& u, const DirectionSet& dirs,
                       const PGrid& pgrid, const QuadratureSpec& quad = {});

/// Filtered backprojection, n = 2 only. Ramp filter |sigma| with a cosine
/// rolloff above window_cutoff * Nyquist.
TensorField radon_invert(const Sinogram& s, const Grid& grid,
                         double window_cutoff = 0.8);

/// Spectral d^order/dp^order with the same rolloff window.
Sinogram p_derivative(const Sinogram& s, int order, double window_cutoff = 0.8);

/// Trapezoidal integral over p of one direction row.
double p_integral(const Sinogram& s, int direction);

}  // namespace tomo
