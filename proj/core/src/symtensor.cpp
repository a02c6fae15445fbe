#include "tomo/symtensor.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace tomo {

int sym_dim(int n, int m) {
  if (n < 1 || m < 0) throw ShapeError("sym_dim: need n >= 1, m >= 0");
  return static_cast<int>(binomial(n + m - 1, m));
}

namespace {

std::uint64_t pack_tuple(std::span<const int> tuple, int dim) {
  std::uint64_t key = 1;  // leading 1 separates ranks
  for (int v : tuple) key = key * static_cast<std::uint64_t>(dim) + static_cast<std::uint64_t>(v);
  return key;
}

void enumerate_sorted(int dim, int rank, int lo, std::vector<int>& prefix,
                      std::vector<std::vector<int>>& out) {
  if (rank == 0) {
    out.push_back(prefix);
    return;
  }
  for (int v = lo; v < dim; ++v) {
    prefix.push_back(v);
    enumerate_sorted(dim, rank - 1, v, prefix, out);
    prefix.pop_back();
  }
}

double tuple_multiplicity(const std::vector<int>& t) {
  double mult = factorial(static_cast<int>(t.size()));
  int run = 1;
  for (std::size_t i = 1; i <= t.size(); ++i) {
    if (i < t.size() && t[i] == t[i - 1]) {
      ++run;
    } else {
      mult /= factorial(run);
      run = 1;
    }
  }
  return mult;
}

}  // namespace

void SymIndexTable::build(int n, int m) {
  dim = n;
  rank = m;
  size = sym_dim(n, m);
  std::vector<int> prefix;
  enumerate_sorted(n, m, 0, prefix, tuples);
  multiplicity.reserve(tuples.size());
  lookup_.reserve(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    multiplicity.push_back(tuple_multiplicity(tuples[i]));
    lookup_.emplace_back(pack_tuple(tuples[i], n), static_cast<int>(i));
  }
  std::sort(lookup_.begin(), lookup_.end());

  // raise: (i_x u)_s = 1/(m+1) * sum over distinct slots j of x_{s_j} u_{s \ j}
  const auto raised = [&] {
    std::vector<std::vector<int>> r;
    std::vector<int> p;
    enumerate_sorted(n, m + 1, 0, p, r);
    return r;
  }();
  raise_terms.resize(raised.size());
  for (std::size_t s = 0; s < raised.size(); ++s) {
    const auto& tup = raised[s];
    for (std::size_t j = 0; j < tup.size(); ++j) {
      if (j > 0 && tup[j] == tup[j - 1]) continue;  // distinct values only
      const int count = static_cast<int>(std::count(tup.begin(), tup.end(), tup[j]));
      std::vector<int> rest;
      rest.reserve(tup.size() - 1);
      for (std::size_t i = 0; i < tup.size(); ++i)
        if (i != j) rest.push_back(tup[i]);
      raise_terms[s].push_back(
          {tup[j], index_of(rest), static_cast<double>(count) / (m + 1)});
    }
  }

  // lower: (j_x u)_s = sum_k x_k u_{sorted(s + k)}
  if (m >= 1) {
    std::vector<std::vector<int>> lowered;
    std::vector<int> p;
    enumerate_sorted(n, m - 1, 0, p, lowered);
    lower_terms.resize(lowered.size());
    for (std::size_t s = 0; s < lowered.size(); ++s) {
      for (int k = 0; k < n; ++k) {
        std::vector<int> ext = lowered[s];
        ext.push_back(k);
        std::sort(ext.begin(), ext.end());
        lower_terms[s].push_back({k, index_of(ext), 1.0});
      }
    }
  }
}

int SymIndexTable::index_of(std::span<const int> sorted_tuple) const {
  const std::uint64_t key = pack_tuple(sorted_tuple, dim);
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(),
                             std::make_pair(key, 0));
  if (it == lookup_.end() || it->first != key)
    throw ShapeError("SymIndexTable: tuple out of range");
  return it->second;
}

const SymIndexTable& sym_index_table(int n, int m) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<SymIndexTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, m}];
  if (!slot) {
    slot = std::make_unique<SymIndexTable>();
    slot->build(n, m);
  }
  return *slot;
}

SymTensor SymTensor::scalar(int dim, double value) {
  SymTensor t(dim, 0);
  t[0] = value;
  return t;
}

SymTensor SymTensor::from_vector(const Vec& w) {
  SymTensor t(static_cast<int>(w.size()), 1);
  for (int i = 0; i < t.size(); ++i) t[i] = w[static_cast<std::size_t>(i)];
  return t;
}

double SymTensor::coeff(std::span<const int> tuple) const {
  std::vector<int> s(tuple.begin(), tuple.end());
  std::sort(s.begin(), s.end());
  return coeffs_[static_cast<std::size_t>(sym_index_table(dim_, rank_).index_of(s))];
}

void SymTensor::set_coeff(std::span<const int> tuple, double value) {
  std::vector<int> s(tuple.begin(), tuple.end());
  std::sort(s.begin(), s.end());
  coeffs_[static_cast<std::size_t>(sym_index_table(dim_, rank_).index_of(s))] = value;
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
  if (dim_ != o.dim_ || rank_ != o.rank_) throw ShapeError("SymTensor +=: shape mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& o) {
  if (dim_ != o.dim_ || rank_ != o.rank_) throw ShapeError("SymTensor -=: shape mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SymTensor& SymTensor::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

double SymTensor::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

SymTensor symmetrize(std::span<const double> dense, int dim, int rank) {
  std::size_t expect = 1;
  for (int i = 0; i < rank; ++i) expect *= static_cast<std::size_t>(dim);
  if (dense.size() != expect) throw ShapeError("symmetrize: dense size != n^m");
  const auto& table = sym_index_table(dim, rank);
  SymTensor out(dim, rank);
  std::vector<int> tuple(static_cast<std::size_t>(rank), 0);
  for (std::size_t flat = 0; flat < dense.size(); ++flat) {
    std::size_t rem = flat;
    for (int a = rank - 1; a >= 0; --a) {
      tuple[static_cast<std::size_t>(a)] = static_cast<int>(rem % static_cast<std::size_t>(dim));
      rem /= static_cast<std::size_t>(dim);
    }
    std::vector<int> s = tuple;
    std::sort(s.begin(), s.end());
    out[table.index_of(s)] += dense[flat];
  }
  for (int i = 0; i < out.size(); ++i) out[i] /= table.multiplicity[static_cast<std::size_t>(i)];
  return out;
}

std::vector<double> to_dense(const SymTensor& u) {
  const int n = u.dim(), m = u.rank();
  const auto& table = sym_index_table(n, m);
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<std::size_t>(n);
  std::vector<double> dense(total);
  std::vector<int> tuple(static_cast<std::size_t>(m), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int a = m - 1; a >= 0; --a) {
      tuple[static_cast<std::size_t>(a)] = static_cast<int>(rem % static_cast<std::size_t>(n));
      rem /= static_cast<std::size_t>(n);
    }
    std::vector<int> s = tuple;
    std::sort(s.begin(), s.end());
    dense[flat] = u[table.index_of(s)];
  }
  return dense;
}

SymTensor sym_product(const SymTensor& u, const SymTensor& v) {
  if (u.dim() != v.dim()) throw ShapeError("sym_product: dimension mismatch");
  const int n = u.dim(), p = u.rank(), q = v.rank(), m = p + q;
  const auto& table_u = sym_index_table(n, p);
  const auto& table_v = sym_index_table(n, q);
  const auto& table = sym_index_table(n, m);
  SymTensor out(n, m);
  // (u (+) v)_s = binom(m, p)^-1 * sum over p-subsets S of the slots of s
  // of u_{s|S} v_{s|rest}.
  std::vector<char> mask(static_cast<std::size_t>(m));
  std::fill(mask.begin(), mask.begin() + p, 1);
  std::sort(mask.begin(), mask.end());  // lowest arrangement for next_permutation
  const double scale = 1.0 / static_cast<double>(binomial(m, p));
  for (int s = 0; s < out.size(); ++s) {
    const auto& tup = table.tuples[static_cast<std::size_t>(s)];
    std::vector<char> sel = mask;
    double acc = 0.0;
    do {
      std::vector<int> a, b;
      a.reserve(static_cast<std::size_t>(p));
      b.reserve(static_cast<std::size_t>(q));
      for (int i = 0; i < m; ++i)
        (sel[static_cast<std::size_t>(i)] ? a : b).push_back(tup[static_cast<std::size_t>(i)]);
      acc += u[table_u.index_of(a)] * v[table_v.index_of(b)];
    } while (std::next_permutation(sel.begin(), sel.end()));
    out[s] = acc * scale;
  }
  return out;
}

SymTensor vec_power(const Vec& w, int m) {
  const int n = static_cast<int>(w.size());
  const auto& table = sym_index_table(n, m);
  SymTensor out(n, m);
  for (int s = 0; s < out.size(); ++s) {
    double prod = 1.0;
    for (int idx : table.tuples[static_cast<std::size_t>(s)]) prod *= w[static_cast<std::size_t>(idx)];
    out[s] = prod;
  }
  return out;
}

SymTensor i_vec(const Vec& x, const SymTensor& u) {
  if (static_cast<int>(x.size()) != u.dim()) throw ShapeError("i_vec: dimension mismatch");
  const auto& table = sym_index_table(u.dim(), u.rank());
  SymTensor out(u.dim(), u.rank() + 1);
  apply_raise(table, x, u.coeffs().data(), out.coeffs().data());
  return out;
}

SymTensor j_vec(const Vec& x, const SymTensor& u) {
  if (static_cast<int>(x.size()) != u.dim()) throw ShapeError("j_vec: dimension mismatch");
  if (u.rank() < 1) throw ShapeError("j_vec: rank-0 input");
  const auto& table = sym_index_table(u.dim(), u.rank());
  SymTensor out(u.dim(), u.rank() - 1);
  apply_lower(table, x, u.coeffs().data(), out.coeffs().data());
  return out;
}

double inner(const SymTensor& u, const SymTensor& v) {
  if (u.dim() != v.dim() || u.rank() != v.rank()) throw ShapeError("inner: shape mismatch");
  const auto& table = sym_index_table(u.dim(), u.rank());
  double s = 0.0;
  for (int i = 0; i < u.size(); ++i)
    s += table.multiplicity[static_cast<std::size_t>(i)] * u[i] * v[i];
  return s;
}

}  // namespace tomo
