#include "tomo/frame.hpp"

#include <cmath>

namespace tomo {

Frame frame_of(const Vec& omega) {
  const int n = static_cast<int>(omega.size());
  if (std::abs(norm(omega) - 1.0) > 1e-10)
    throw ShapeError("frame_of: direction is not a unit vector");
  Frame f;
  f.omega = omega;
  if (n == 2) {
    f.basis = {{-omega[1], omega[0]}};
  } else if (n == 3) {
    const Vec seed = std::abs(omega[2]) < 0.9 ? Vec{0, 0, 1} : Vec{1, 0, 0};
    const Vec b1 = normalized(cross(seed, omega));
    f.basis = {b1, cross(omega, b1)};
  } else {
    throw ShapeError("frame_of: only n in {2,3}");
  }
  return f;
}

void validate_orthonormal(const Frame& frame, double tol) {
  const int n = frame.dim();
  if (static_cast<int>(frame.basis.size()) != n - 1)
    throw ShapeError("frame: basis must have n-1 vectors");
  std::vector<const Vec*> all;
  all.push_back(&frame.omega);
  for (const auto& b : frame.basis) all.push_back(&b);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      const double g = dot(*all[i], *all[j]);
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(g - expect) > tol)
        throw ShapeError("frame: not orthonormal (Gram deviation exceeds tolerance)");
    }
}

FrameMonomialBasis frame_monomials(const Frame& frame, int rank) {
  validate_orthonormal(frame);
  const int n = frame.dim();
  FrameMonomialBasis basis;
  basis.frame = frame;
  basis.rank = rank;
  basis.indices = multi_indices(n, rank);
  basis.monomials.reserve(basis.indices.size());
  basis.dual_weights.reserve(basis.indices.size());
  for (const auto& ell : basis.indices) {
    SymTensor mono = SymTensor::scalar(n, 1.0);
    for (int a = 0; a < n - 1; ++a)
      mono = sym_product(mono, vec_power(frame.basis[static_cast<std::size_t>(a)], ell[a]));
    mono = sym_product(mono, vec_power(frame.omega, ell[n - 1]));
    basis.monomials.push_back(std::move(mono));
    basis.dual_weights.push_back(multinomial(ell));
  }
  return basis;
}

int FrameMonomialBasis::position(const MultiIndex& ell) const {
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (indices[i] == ell) return static_cast<int>(i);
  throw ShapeError("FrameMonomialBasis: multi-index not in basis");
}

std::vector<double> expand_in_frame(const SymTensor& u, const FrameMonomialBasis& basis) {
  if (u.dim() != basis.frame.dim() || u.rank() != basis.rank)
    throw ShapeError("expand_in_frame: shape mismatch");
  std::vector<double> c(basis.monomials.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = inner(u, basis.monomials[i]);
  return c;
}

std::vector<double> expand_in_frame(const SymTensor& u, const Frame& frame) {
  return expand_in_frame(u, frame_monomials(frame, u.rank()));
}

SymTensor reconstruct_from_frame(const std::vector<double>& raw_coeffs,
                                 const FrameMonomialBasis& basis) {
  if (raw_coeffs.size() != basis.monomials.size())
    throw ShapeError("reconstruct_from_frame: coefficient count mismatch");
  SymTensor u(basis.frame.dim(), basis.rank);
  for (std::size_t i = 0; i < raw_coeffs.size(); ++i) {
    SymTensor term = basis.monomials[i];
    term *= basis.dual_weights[i] * raw_coeffs[i];
    u += term;
  }
  return u;
}

}  // namespace tomo
