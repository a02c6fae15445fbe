#pragma once

#include <vector>

#include "tomo/common.hpp"
#include "tomo/multi_index.hpp"
#include "tomo/symtensor.hpp"

namespace tomo {

/// A unit direction omega together with an orthonormal basis of the
/// hyperplane omega-perp.
struct Frame {
  Vec omega;
  std::vector<Vec> basis;  // n - 1 vectors

  int dim() const { return static_cast<int>(omega.size()); }
};

/// Deterministic frame for a unit direction.
/// n = 2: omega = (cos t, sin t) -> basis = {(-sin t, cos t)}.
/// n = 3: basis[0] = normalize(e3 x omega), basis[1] = omega x basis[0];
///        near the poles (|omega.e3| >= 0.9) the seed vector is e1 instead.
Frame frame_of(const Vec& omega);

/// Throws ShapeError when the Gram matrix of {omega, basis...} deviates from
/// the identity by more than tol.
void validate_orthonormal(const Frame& frame, double tol = 1e-10);

/// The tensors b1^(l1) (+) ... (+) b_{n-1}^(l_{n-1}) (+) omega^(l_n) over all
/// multi-indices with |l| = rank (omega takes the last slot). They are
/// pairwise orthogonal with <B,B> = l!/m!, so expansion needs the dual
/// weights m!/l!.
struct FrameMonomialBasis {
  Frame frame;
  int rank = 0;
  std::vector<MultiIndex> indices;    // n slots, lexicographic
  std::vector<SymTensor> monomials;
  std::vector<double> dual_weights;   // m!/l!

  int size() const { return static_cast<int>(monomials.size()); }
  /// Position of a multi-index in the enumeration.
  int position(const MultiIndex& ell) const;
};

FrameMonomialBasis frame_monomials(const Frame& frame, int rank);

/// Raw projections c_l = <u, B_l> in enumeration order.
std::vector<double> expand_in_frame(const SymTensor& u, const FrameMonomialBasis& basis);
std::vector<double> expand_in_frame(const SymTensor& u, const Frame& frame);

/// u = sum_l dual_weight(l) c_l B_l for raw coefficients c_l.
SymTensor reconstruct_from_frame(const std::vector<double>& raw_coeffs,
                                 const FrameMonomialBasis& basis);

}  // namespace tomo
