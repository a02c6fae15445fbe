#pragma once

#include <cstdint>

#include "tomo/multi_index.hpp"
#include "tomo/scalar_radon.hpp"

namespace tomo {

enum class TransformFamily : std::uint8_t {
  trt = 0,
  lrt = 1,
  weighted_trt = 2,
  weighted_lrt = 3,
};

const char* family_name(TransformFamily f);

/// Componentwise hyperplane data: one scalar sinogram per tensor component.
struct TensorSinogram {
  DirectionSet dirs;
  PGrid pgrid;
  int dim = 0;
  int rank = 0;
  std::vector<double> data;  // [c * dcount * pcount + d * pcount + ip]

  TensorSinogram() = default;
  TensorSinogram(DirectionSet d, PGrid p, int dim_, int rank_);

  int components() const { return sym_dim(dim, rank); }
  double at(int c, int d, int ip) const;
  double& at(int c, int d, int ip);
  Sinogram component(int c) const;
  SymTensor tensor_at(int d, int ip) const;
};

/// Hyperplane integrals of <f(x), omega^(m)>.
Sinogram trt(const TensorField& f, const DirectionSet& dirs, const PGrid& pgrid,
             const QuadratureSpec& quad = {});

/// Hyperplane integrals of <f(x), b1^(l1) (+) ... (+) b_{n-1}^(l_{n-1})>,
/// |l| = m over the n-1 in-plane slots.
Sinogram lrt(const TensorField& f, const MultiIndex& ell, const DirectionSet& dirs,
             const PGrid& pgrid, const QuadratureSpec& quad = {});

/// Order-k moment weights against omega^(m): integrand
/// prod_a <x, b_a>^(l_a) * <f, omega^(m)>, |l| = k, 1 <= k <= m.
Sinogram weighted_trt(const TensorField& f, int k, const MultiIndex& ell,
                      const DirectionSet& dirs, const PGrid& pgrid,
                      const QuadratureSpec& quad = {});

/// Order-k moment against in-plane monomials under the k1 = k convention:
/// integrand <x, b1>^k * <f, b1^(l1 + k) (+) b2^(l2) (+) ...>, |l| = m - k.
Sinogram weighted_lrt(const TensorField& f, int k, const MultiIndex& ell,
                      const DirectionSet& dirs, const PGrid& pgrid,
                      const QuadratureSpec& quad = {});

/// Scalar transform applied to every component.
TensorSinogram componentwise_radon(const TensorField& f, const DirectionSet& dirs,
                                   const PGrid& pgrid, const QuadratureSpec& quad = {});

/// One family's full set of sinograms, one per multi-index, in the
/// deterministic enumeration order of dataset_indices.
struct WeightedDataset {
  TransformFamily family = TransformFamily::trt;
  int order = 0;       // k for weighted families, 0 otherwise
  int field_rank = 0;  // m
  std::vector<MultiIndex> indices;
  std::vector<Sinogram> sinograms;

  int size() const { return static_cast<int>(sinograms.size()); }
  const Sinogram& entry(const MultiIndex& ell) const;
  bool has(const MultiIndex& ell) const;
};

/// The multi-index enumeration each family requires: lrt |l| = m, trt the
/// single empty weight, weighted_trt |l| = k, weighted_lrt |l| = m - k; all
/// over n - 1 slots, ascending lexicographic.
std::vector<MultiIndex> dataset_indices(TransformFamily family, int n, int m, int k);

WeightedDataset make_dataset(const TensorField& f, TransformFamily family, int k,
                             const DirectionSet& dirs, const PGrid& pgrid,
                             const QuadratureSpec& quad = {});

/// Single-direction transform row used by the reconstruction corrections:
/// out[ip] = integral of prod_a <x,b_a>^(tpowers_a) * <f, monomial> over the
/// hyperplane (omega, p_ip). The monomial is an arbitrary rank-m tensor.
void transform_row(std::span<double> out, const TensorField& f, const Vec& omega,
                   const Frame& frame, const PGrid& pgrid, const QuadratureSpec& quad,
                   const SymTensor& monomial, std::span<const int> tpowers);

}  // namespace tomo
