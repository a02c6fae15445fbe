#pragma once

#include <limits>
#include <span>
#include <vector>

#include "tomo/grid.hpp"
#include "tomo/symtensor.hpp"

namespace tomo {

/// A symmetric m-tensor field sampled on a grid. Storage is
/// component-major: data[c * nodes + node] with nodes row-major, components
/// in the lexicographic sorted-tuple order of sym_index_table.
class TensorField {
 public:
  TensorField() = default;
  TensorField(Grid grid, int rank);

  const Grid& grid() const { return grid_; }
  int dim() const { return grid_.dim(); }
  int rank() const { return rank_; }
  int components() const { return comps_; }
  std::size_t nodes() const { return nodes_; }

  std::span<const double> component(int c) const {
    return {data_.data() + static_cast<std::size_t>(c) * nodes_, nodes_};
  }
  std::span<double> component(int c) {
    return {data_.data() + static_cast<std::size_t>(c) * nodes_, nodes_};
  }
  double at(int c, std::size_t node) const {
    return data_[static_cast<std::size_t>(c) * nodes_ + node];
  }
  double& at(int c, std::size_t node) {
    return data_[static_cast<std::size_t>(c) * nodes_ + node];
  }
  std::span<const double> raw() const { return data_; }
  std::span<double> raw() { return data_; }

  SymTensor tensor_at(std::size_t node) const;
  void set_tensor_at(std::size_t node, const SymTensor& t);

  TensorField& operator+=(const TensorField& o);
  TensorField& operator-=(const TensorField& o);
  TensorField& operator*=(double s);
  friend TensorField operator+(TensorField a, const TensorField& b) { return a += b; }
  friend TensorField operator-(TensorField a, const TensorField& b) { return a -= b; }
  friend TensorField operator*(TensorField a, double s) { return a *= s; }

  double max_abs() const;
  bool compatible(const TensorField& o) const {
    return grid_ == o.grid_ && rank_ == o.rank_;
  }

 private:
  Grid grid_;
  int rank_ = 0;
  int comps_ = 0;
  std::size_t nodes_ = 0;
  std::vector<double> data_;
};

/// Default relative boundary-decay tolerance for spectral operators.
inline constexpr double kBoundaryTol = 1e-10;
/// Passing this disables the decay precondition (reconstruction outputs
/// carry filtered-backprojection residue that never decays to 1e-10).
inline constexpr double kNoDecayCheck = std::numeric_limits<double>::infinity();

/// Largest boundary-node fluctuation |u - mean| relative to the field's
/// peak fluctuation. Constants report 0.
double boundary_fluctuation(const TensorField& u);

/// Symmetrized gradient: rank m -> m+1, spectral.
TensorField d_field(const TensorField& u, double boundary_tol = kBoundaryTol);

/// Divergence on the last slot: rank m -> m-1, spectral.
TensorField div_field(const TensorField& u, double boundary_tol = kBoundaryTol);

/// Componentwise Laplacian, spectral.
TensorField laplacian_field(const TensorField& u, double boundary_tol = kBoundaryTol);

/// L2-orthogonal projection onto divergence-free fields (zero frequency
/// untouched).
TensorField solenoidal_project(const TensorField& u);

/// sum_i d^i vs[i]; vs[i] must have rank m - i.
TensorField compose_potentials(const std::vector<TensorField>& vs,
                               double boundary_tol = kBoundaryTol);

/// Multiplicity-weighted discrete L2 norm (includes the cell volume).
double l2_norm(const TensorField& u);

/// |a - b| / |b|, or |a - b| when |b| = 0.
double l2_error(const TensorField& a, const TensorField& b);

/// |div u| / (|u| * rms_wavenumber(u)): a dimensionless divergence residual.
double relative_divergence(const TensorField& u);

double mean_component_max(const TensorField& u);  // max_c |mean of component c|

/// Pointwise full contraction <f(x), M>: rank m field, rank m tensor -> scalar field.
TensorField contract_full(const TensorField& f, const SymTensor& m_tensor);

/// Pointwise repeated contraction with a vector: rank m -> m - times.
TensorField contract_power(const TensorField& f, const Vec& w, int times);

/// Pointwise scale by <x,a>^power.
TensorField multiply_linear_weight(const TensorField& f, const Vec& a, int power);

}  // namespace tomo
