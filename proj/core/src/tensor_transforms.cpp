#include "tomo/tensor_transforms.hpp"

#include <algorithm>

#include "hyperplane_quadrature.hpp"

namespace tomo {

const char* family_name(TransformFamily f) {
  switch (f) {
    case TransformFamily::trt: return "trt";
    case TransformFamily::lrt: return "lrt";
    case TransformFamily::weighted_trt: return "wtrt";
    case TransformFamily::weighted_lrt: return "wlrt";
  }
  return "?";
}

TensorSinogram::TensorSinogram(DirectionSet d, PGrid p, int dim_, int rank_)
    : dirs(std::move(d)), pgrid(p), dim(dim_), rank(rank_),
      data(static_cast<std::size_t>(sym_dim(dim_, rank_)) *
               static_cast<std::size_t>(dirs.count()) * static_cast<std::size_t>(pgrid.count),
           0.0) {}

double TensorSinogram::at(int c, int d, int ip) const {
  return data[(static_cast<std::size_t>(c) * static_cast<std::size_t>(dirs.count()) +
               static_cast<std::size_t>(d)) * static_cast<std::size_t>(pgrid.count) +
              static_cast<std::size_t>(ip)];
}

double& TensorSinogram::at(int c, int d, int ip) {
  return data[(static_cast<std::size_t>(c) * static_cast<std::size_t>(dirs.count()) +
               static_cast<std::size_t>(d)) * static_cast<std::size_t>(pgrid.count) +
              static_cast<std::size_t>(ip)];
}

Sinogram TensorSinogram::component(int c) const {
  Sinogram s(dirs, pgrid);
  const std::size_t block = static_cast<std::size_t>(dirs.count()) * static_cast<std::size_t>(pgrid.count);
  std::copy_n(data.data() + static_cast<std::size_t>(c) * block, block, s.data.data());
  return s;
}

SymTensor TensorSinogram::tensor_at(int d, int ip) const {
  SymTensor t(dim, rank);
  for (int c = 0; c < t.size(); ++c) t[c] = at(c, d, ip);
  return t;
}

namespace {

struct ContractionWeights {
  std::vector<double> w;  // multiplicity * monomial coefficient
};

ContractionWeights contraction_weights(const SymTensor& monomial) {
  const auto& mult = sym_index_table(monomial.dim(), monomial.rank()).multiplicity;
  ContractionWeights cw;
  cw.w.resize(static_cast<std::size_t>(monomial.size()));
  for (int c = 0; c < monomial.size(); ++c)
    cw.w[static_cast<std::size_t>(c)] = mult[static_cast<std::size_t>(c)] * monomial[c];
  return cw;
}

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

void contraction_row(std::span<double> out, const TensorField& f, const Vec& omega,
                     const Frame& frame, const PGrid& pgrid, double step_factor,
                     int interp_order, const ContractionWeights& cw,
                     std::span<const int> tpowers) {
  std::fill(out.begin(), out.end(), 0.0);
  const int comps = f.components();
  const bool weighted = std::any_of(tpowers.begin(), tpowers.end(), [](int p) { return p != 0; });
  detail::sample_hyperplanes(
      f.grid(), omega, frame, pgrid, step_factor, interp_order,
      [&](int ip, const detail::Interp& interp, const double* t, double dvol) {
        double val = 0.0;
        for (int c = 0; c < comps; ++c) {
          const double w = cw.w[static_cast<std::size_t>(c)];
          if (w != 0.0) val += w * interp.gather(f.component(c));
        }
        if (weighted) {
          for (std::size_t a = 0; a < tpowers.size(); ++a) val *= ipow(t[a], tpowers[a]);
        }
        out[static_cast<std::size_t>(ip)] += dvol * val;
      });
}

/// Monomial builder per family.
SymTensor family_monomial(TransformFamily family, const Frame& frame, int m,
                          int k, const MultiIndex& ell) {
  const int n = frame.dim();
  switch (family) {
    case TransformFamily::trt:
      return vec_power(frame.omega, m);
    case TransformFamily::weighted_trt:
      return vec_power(frame.omega, m);
    case TransformFamily::lrt: {
      SymTensor mono = SymTensor::scalar(n, 1.0);
      for (int a = 0; a < n - 1; ++a)
        mono = sym_product(mono, vec_power(frame.basis[static_cast<std::size_t>(a)], ell[a]));
      return mono;
    }
    case TransformFamily::weighted_lrt: {
      SymTensor mono = vec_power(frame.basis[0], ell[0] + k);
      for (int a = 1; a < n - 1; ++a)
        mono = sym_product(mono, vec_power(frame.basis[static_cast<std::size_t>(a)], ell[a]));
      return mono;
    }
  }
  throw ShapeError("family_monomial: unknown family");
}

std::vector<int> family_tpowers(TransformFamily family, int n, int k, const MultiIndex& ell) {
  std::vector<int> powers(static_cast<std::size_t>(n - 1), 0);
  if (family == TransformFamily::weighted_trt) powers.assign(ell.entries.begin(), ell.entries.end());
  if (family == TransformFamily::weighted_lrt) powers[0] = k;
  return powers;
}

void validate_family_args(TransformFamily family, const TensorField& f, int k,
                          const MultiIndex& ell) {
  const int n = f.dim(), m = f.rank();
  if (ell.slots() != n - 1)
    throw ShapeError("transform: multi-index must have n-1 slots");
  switch (family) {
    case TransformFamily::trt:
      break;
    case TransformFamily::lrt:
      if (ell.degree() != m) throw ShapeError("lrt: |l| must equal the rank");
      break;
    case TransformFamily::weighted_trt:
      if (k < 1 || k > m) throw ShapeError("weighted_trt: order k must satisfy 1 <= k <= m");
      if (ell.degree() != k) throw ShapeError("weighted_trt: |l| must equal k");
      break;
    case TransformFamily::weighted_lrt:
      if (k < 1 || k > m) throw ShapeError("weighted_lrt: order k must satisfy 1 <= k <= m");
      if (ell.degree() != m - k) throw ShapeError("weighted_lrt: |l| must equal m - k");
      break;
  }
}

Sinogram family_transform(const TensorField& f, TransformFamily family, int k,
                          const MultiIndex& ell, const DirectionSet& dirs,
                          const PGrid& pgrid, const QuadratureSpec& quad) {
  if (dirs.dim != f.dim()) throw ShapeError("transform: dimension mismatch");
  validate_family_args(family, f, k, ell);
  detail::require_field_decay(f, quad.boundary_tol, "transform");
  detail::require_support_covered(f, pgrid, "transform");
  Sinogram s(dirs, pgrid);
  parallel_for(static_cast<std::size_t>(dirs.count()), [&](std::size_t d) {
    const Frame& frame = dirs.frames[d];
    const auto cw = contraction_weights(family_monomial(family, frame, f.rank(), k, ell));
    const auto tpowers = family_tpowers(family, f.dim(), k, ell);
    contraction_row(s.row(static_cast<int>(d)), f, dirs.directions[d], frame, pgrid,
                    quad.step_factor, quad.interp_order, cw, tpowers);
  });
  return s;
}

}  // namespace

Sinogram trt(const TensorField& f, const DirectionSet& dirs, const PGrid& pgrid,
             const QuadratureSpec& quad) {
  return family_transform(f, TransformFamily::trt, 0,
                          MultiIndex(std::vector<int>(static_cast<std::size_t>(f.dim() - 1), 0)),
                          dirs, pgrid, quad);
}

Sinogram lrt(const TensorField& f, const MultiIndex& ell, const DirectionSet& dirs,
             const PGrid& pgrid, const QuadratureSpec& quad) {
  return family_transform(f, TransformFamily::lrt, 0, ell, dirs, pgrid, quad);
}

Sinogram weighted_trt(const TensorField& f, int k, const MultiIndex& ell,
                      const DirectionSet& dirs, const PGrid& pgrid,
                      const QuadratureSpec& quad) {
  return family_transform(f, TransformFamily::weighted_trt, k, ell, dirs, pgrid, quad);
}

Sinogram weighted_lrt(const TensorField& f, int k, const MultiIndex& ell,
                      const DirectionSet& dirs, const PGrid& pgrid,
                      const QuadratureSpec& quad) {
  return family_transform(f, TransformFamily::weighted_lrt, k, ell, dirs, pgrid, quad);
}

TensorSinogram componentwise_radon(const TensorField& f, const DirectionSet& dirs,
                                   const PGrid& pgrid, const QuadratureSpec& quad) {
  if (dirs.dim != f.dim()) throw ShapeError("componentwise_radon: dimension mismatch");
  detail::require_field_decay(f, quad.boundary_tol, "componentwise_radon");
  detail::require_support_covered(f, pgrid, "componentwise_radon");
  TensorSinogram s(dirs, pgrid, f.dim(), f.rank());
  const int comps = f.components();
  const std::size_t block = static_cast<std::size_t>(dirs.count()) * static_cast<std::size_t>(pgrid.count);
  parallel_for(static_cast<std::size_t>(dirs.count()), [&](std::size_t d) {
    detail::sample_hyperplanes(
        f.grid(), dirs.directions[d], dirs.frames[d], pgrid, quad.step_factor,
        quad.interp_order,
        [&](int ip, const detail::Interp& interp, const double*, double dvol) {
          const std::size_t at = d * static_cast<std::size_t>(pgrid.count) + static_cast<std::size_t>(ip);
          for (int c = 0; c < comps; ++c)
            s.data[static_cast<std::size_t>(c) * block + at] += dvol * interp.gather(f.component(c));
        });
  });
  return s;
}

const Sinogram& WeightedDataset::entry(const MultiIndex& ell) const {
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (indices[i] == ell) return sinograms[i];
  throw ShapeError(std::string("dataset ") + family_name(family) +
                   ": missing sinogram for multi-index " + ell.str());
}

bool WeightedDataset::has(const MultiIndex& ell) const {
  return std::find(indices.begin(), indices.end(), ell) != indices.end();
}

std::vector<MultiIndex> dataset_indices(TransformFamily family, int n, int m, int k) {
  switch (family) {
    case TransformFamily::trt:
      return {MultiIndex(std::vector<int>(static_cast<std::size_t>(n - 1), 0))};
    case TransformFamily::lrt:
      return multi_indices(n - 1, m);
    case TransformFamily::weighted_trt:
      if (k < 1 || k > m) throw ShapeError("dataset_indices: order out of range");
      return multi_indices(n - 1, k);
    case TransformFamily::weighted_lrt:
      if (k < 1 || k > m) throw ShapeError("dataset_indices: order out of range");
      return multi_indices(n - 1, m - k);
  }
  throw ShapeError("dataset_indices: unknown family");
}

WeightedDataset make_dataset(const TensorField& f, TransformFamily family, int k,
                             const DirectionSet& dirs, const PGrid& pgrid,
                             const QuadratureSpec& quad) {
  WeightedDataset ds;
  ds.family = family;
  ds.order = (family == TransformFamily::weighted_trt || family == TransformFamily::weighted_lrt) ? k : 0;
  ds.field_rank = f.rank();
  ds.indices = dataset_indices(family, f.dim(), f.rank(), k);
  ds.sinograms.reserve(ds.indices.size());
  for (const auto& ell : ds.indices)
    ds.sinograms.push_back(family_transform(f, family, ds.order, ell, dirs, pgrid, quad));
  return ds;
}

void transform_row(std::span<double> out, const TensorField& f, const Vec& omega,
                   const Frame& frame, const PGrid& pgrid, const QuadratureSpec& quad,
                   const SymTensor& monomial, std::span<const int> tpowers) {
  if (monomial.dim() != f.dim() || monomial.rank() != f.rank())
    throw ShapeError("transform_row: monomial shape mismatch");
  const auto cw = contraction_weights(monomial);
  std::vector<int> powers(tpowers.begin(), tpowers.end());
  powers.resize(static_cast<std::size_t>(f.dim() - 1), 0);
  contraction_row(out, f, omega, frame, pgrid, quad.step_factor, quad.interp_order, cw,
                  powers);
}

}  // namespace tomo
