#pragma once

#include <span>
#include <vector>

#include "tomo/common.hpp"

namespace tomo {

/// Number of independent coefficients of a symmetric rank-m tensor in R^n:
/// binom(n + m - 1, m).
int sym_dim(int n, int m);

/// Index bookkeeping for one (dimension, rank) pair: the lexicographic list
/// of sorted index tuples (i_1 <= ... <= i_m over 0..n-1), the number of
/// distinct permutations of each tuple, and sparse tables for the symmetric
/// multiplication and contraction operators. Tables are built once and
/// cached; lookups are safe from any thread.
class SymIndexTable {
 public:
  int dim = 0;
  int rank = 0;
  int size = 0;
  std::vector<std::vector<int>> tuples;  // sorted, lexicographic
  std::vector<double> multiplicity;      // m! / prod(repeat counts!)

  int index_of(std::span<const int> sorted_tuple) const;

  struct Term {
    int axis;     // which component of the vector argument
    int input;    // coefficient index in the input tensor
    double weight;
  };
  // Per output coefficient: (i_x u)_s = sum of w * x_axis * u_input.
  // Terms raise rank by one; built on the table of the *input* rank.
  std::vector<std::vector<Term>> raise_terms;  // size = sym_dim(dim, rank+1)
  // Per output coefficient: (j_x u)_s = sum of x_axis * u_input.
  std::vector<std::vector<Term>> lower_terms;  // size = sym_dim(dim, rank-1); empty for rank 0

 private:
  std::vector<std::pair<std::uint64_t, int>> lookup_;  // packed key -> index
  friend const SymIndexTable& sym_index_table(int n, int m);
  void build(int n, int m);
};

const SymIndexTable& sym_index_table(int n, int m);

/// One symmetric m-tensor over R^n, one coefficient per sorted index tuple.
class SymTensor {
 public:
  SymTensor() = default;
  SymTensor(int dim, int rank)
      : dim_(dim), rank_(rank), coeffs_(static_cast<std::size_t>(sym_dim(dim, rank)), 0.0) {}

  static SymTensor scalar(int dim, double value);
  static SymTensor from_vector(const Vec& w);  // rank 1

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  double operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return coeffs_[static_cast<std::size_t>(i)]; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }

  /// Coefficient addressed by an index tuple in any order.
  double coeff(std::span<const int> tuple) const;
  void set_coeff(std::span<const int> tuple, double value);

  SymTensor& operator+=(const SymTensor& o);
  SymTensor& operator-=(const SymTensor& o);
  SymTensor& operator*=(double s);
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(SymTensor a, double s) { return a *= s; }
  friend SymTensor operator*(double s, SymTensor a) { return a *= s; }

  double max_abs() const;

 private:
  int dim_ = 0;
  int rank_ = 0;
  std::vector<double> coeffs_;
};

/// Average of a dense rank-m array (row-major, n^m entries) over all index
/// permutations, stored as a SymTensor.
SymTensor symmetrize(std::span<const double> dense, int dim, int rank);

/// Dense row-major n^m array with the coefficient repeated across all
/// permutations of each sorted tuple.
std::vector<double> to_dense(const SymTensor& u);

/// Symmetric product u (+) v = symmetrize(u (x) v); commutative, bilinear.
SymTensor sym_product(const SymTensor& u, const SymTensor& v);

/// m-fold symmetric power of a vector; coeff(i1..im) = w_i1 ... w_im.
SymTensor vec_power(const Vec& w, int m);

/// Symmetric multiplication by a vector: rank m -> m+1.
SymTensor i_vec(const Vec& x, const SymTensor& u);

/// Contraction with a vector on one slot: rank m -> m-1.
SymTensor j_vec(const Vec& x, const SymTensor& u);

/// Full contraction over all n^m index tuples.
double inner(const SymTensor& u, const SymTensor& v);

/// Raw kernels for the hot loops (frequency-domain solves). `in` has
/// sym_dim(n, m) entries of T, `out` sym_dim(n, m±1); T is double or
/// std::complex<double>. `table` must be sym_index_table(n, m) of the input.
template <typename T>
void apply_raise(const SymIndexTable& table, const Vec& x,
                 const T* in, T* out) {
  const auto& terms = table.raise_terms;
  for (std::size_t s = 0; s < terms.size(); ++s) {
    T acc{};
    for (const auto& t : terms[s]) acc += (t.weight * x[static_cast<std::size_t>(t.axis)]) * in[t.input];
    out[s] = acc;
  }
}

template <typename T>
void apply_lower(const SymIndexTable& table, const Vec& x,
                 const T* in, T* out) {
  const auto& terms = table.lower_terms;
  for (std::size_t s = 0; s < terms.size(); ++s) {
    T acc{};
    for (const auto& t : terms[s]) acc += x[static_cast<std::size_t>(t.axis)] * in[t.input];
    out[s] = acc;
  }
}

}  // namespace tomo
