#pragma once

#include <string>

#include "tomo/tensor_field.hpp"

namespace tomo {

/// Zero-frequency handling record. The constant mode lies in the kernel of
/// every solver here, so solutions are pinned to mean zero; inputs with a
/// noticeable mean are flagged rather than rejected.
struct GaugeReport {
  double input_mean = 0.0;  // worst |component mean| of the right-hand side
  bool warned = false;
  std::string description = "zero-mean gauge: solution DC component pinned to 0";
};

/// Solves div^k d^k v = h per frequency (dense solve of the j_y^k i_y^k
/// system; v_hat(0) = 0). k = 0 returns h.
TensorField solve_delta_d_k(const TensorField& h, int k, GaugeReport* gauge = nullptr);

/// Componentwise Laplacian inversion, u_hat = -h_hat / |y|^2, u_hat(0) = 0.
TensorField poisson_invert(const TensorField& h, GaugeReport* gauge = nullptr);

/// f = sum_i d^i v_i with v_0 .. v_{m-1} divergence-free.
struct DecompositionResult {
  std::vector<TensorField> components;       // v_0 (rank m) .. v_m (rank 0)
  double residual = 0.0;                     // rel L2 error of the recomposition
  std::vector<double> divergence_residuals;  // relative_divergence of v_i, i < m
  std::string gauge;
};

/// Multi-level splitting: peel the divergence-free part, solve
/// div d w = div f for the potential generator, recurse on w.
DecompositionResult decompose(const TensorField& f, double residual_tol = 1e-4);

}  // namespace tomo
