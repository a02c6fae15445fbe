#pragma once

#include <cstdint>
#include <optional>

#include "tomo/tensor_field.hpp"

namespace tomo {

/// Test-field recipe. Fields are sums of Gaussian bumps times Hermite-type
/// polynomial factors chosen so every component has exactly zero integral
/// (the spectral solvers fix the zero-frequency gauge at 0, so inputs must
/// be mean-free without losing decay).
struct PhantomSpec {
  enum class Kind { gaussian_poly, random_band };
  enum class Target { raw, solenoidal, potential_of_order };

  Kind kind = Kind::gaussian_poly;
  Target target = Target::raw;
  int potential_order = 0;  // i for Target::potential_of_order: d^i of a rank m-i phantom

  int bumps = 3;
  int poly_degree = 2;  // 1 or 2
  double amplitude = 1.0;
  double center_radius = 1.5;
  double width_min = 0.30;
  double width_max = 0.45;
  std::uint64_t seed = 1;

  // Optional explicit geometry; randomized from the seed when empty.
  std::vector<Vec> centers;
  std::vector<double> widths;
};

/// Deterministic phantom of the given rank. Throws DecayError when the
/// resulting field violates the boundary contract (widths too large for the
/// box). Solenoidal targets are built exactly divergence-free where a
/// closed construction exists (any rank in n=2; rank 1 and 2 in n=3) and by
/// spectral projection otherwise.
TensorField gaussian_phantom(const PhantomSpec& spec, const Grid& grid, int rank);

/// Rank-m exactly solenoidal field from a scalar stream potential
/// (n = 2 only): coefficients (i perp(y))^m psi_hat in the Fourier domain.
TensorField solenoidal_from_stream(const TensorField& psi, int rank);

}  // namespace tomo
