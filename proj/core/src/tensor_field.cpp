#include "tomo/tensor_field.hpp"

#include <algorithm>
#include <cmath>

namespace tomo {

TensorField::TensorField(Grid grid, int rank)
    : grid_(std::move(grid)),
      rank_(rank),
      comps_(sym_dim(grid_.dim(), rank)),
      nodes_(grid_.node_count()),
      data_(static_cast<std::size_t>(comps_) * nodes_, 0.0) {
  if (rank < 0) throw ShapeError("TensorField: negative rank");
}

SymTensor TensorField::tensor_at(std::size_t node) const {
  SymTensor t(dim(), rank_);
  for (int c = 0; c < comps_; ++c) t[c] = at(c, node);
  return t;
}

void TensorField::set_tensor_at(std::size_t node, const SymTensor& t) {
  if (t.dim() != dim() || t.rank() != rank_)
    throw ShapeError("set_tensor_at: shape mismatch");
  for (int c = 0; c < comps_; ++c) at(c, node) = t[c];
}

TensorField& TensorField::operator+=(const TensorField& o) {
  if (!compatible(o)) throw ShapeError("TensorField +=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

TensorField& TensorField::operator-=(const TensorField& o) {
  if (!compatible(o)) throw ShapeError("TensorField -=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

TensorField& TensorField::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double TensorField::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double l2_norm(const TensorField& u) {
  const auto& mult = sym_index_table(u.dim(), u.rank()).multiplicity;
  double s = 0.0;
  for (int c = 0; c < u.components(); ++c) {
    double cs = 0.0;
    for (double v : u.component(c)) cs += v * v;
    s += mult[static_cast<std::size_t>(c)] * cs;
  }
  return std::sqrt(s * u.grid().cell_volume());
}

double l2_error(const TensorField& a, const TensorField& b) {
  if (!a.compatible(b)) throw ShapeError("l2_error: shape mismatch");
  TensorField diff = a;
  diff -= b;
  const double nb = l2_norm(b);
  const double nd = l2_norm(diff);
  return nb == 0.0 ? nd : nd / nb;
}

double mean_component_max(const TensorField& u) {
  double worst = 0.0;
  for (int c = 0; c < u.components(); ++c) {
    double s = 0.0;
    for (double v : u.component(c)) s += v;
    worst = std::max(worst, std::abs(s) / static_cast<double>(u.nodes()));
  }
  return worst;
}

TensorField contract_full(const TensorField& f, const SymTensor& m_tensor) {
  if (m_tensor.dim() != f.dim() || m_tensor.rank() != f.rank())
    throw ShapeError("contract_full: shape mismatch");
  const auto& mult = sym_index_table(f.dim(), f.rank()).multiplicity;
  TensorField out(f.grid(), 0);
  auto dst = out.component(0);
  for (int c = 0; c < f.components(); ++c) {
    const double w = mult[static_cast<std::size_t>(c)] * m_tensor[c];
    if (w == 0.0) continue;
    auto src = f.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += w * src[i];
  }
  return out;
}

TensorField contract_power(const TensorField& f, const Vec& w, int times) {
  if (times < 0 || times > f.rank()) throw ShapeError("contract_power: bad count");
  TensorField cur = f;
  for (int t = 0; t < times; ++t) {
    const auto& table = sym_index_table(cur.dim(), cur.rank());
    TensorField next(cur.grid(), cur.rank() - 1);
    for (std::size_t s = 0; s < table.lower_terms.size(); ++s) {
      auto dst = next.component(static_cast<int>(s));
      for (const auto& term : table.lower_terms[s]) {
        const double x = w[static_cast<std::size_t>(term.axis)];
        if (x == 0.0) continue;
        auto src = cur.component(term.input);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += x * src[i];
      }
    }
    cur = std::move(next);
  }
  return cur;
}

TensorField multiply_linear_weight(const TensorField& f, const Vec& a, int power) {
  if (static_cast<int>(a.size()) != f.dim())
    throw ShapeError("multiply_linear_weight: dimension mismatch");
  TensorField out = f;
  const Grid& g = f.grid();
  std::vector<double> weight(f.nodes());
  const auto ipow = [](double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
  };
  if (g.dim() == 2) {
    std::size_t node = 0;
    for (int i0 = 0; i0 < g.shape[0]; ++i0) {
      const double c0 = a[0] * g.coord(0, i0);
      for (int i1 = 0; i1 < g.shape[1]; ++i1)
        weight[node++] = ipow(c0 + a[1] * g.coord(1, i1), power);
    }
  } else {
    std::size_t node = 0;
    for (int i0 = 0; i0 < g.shape[0]; ++i0)
      for (int i1 = 0; i1 < g.shape[1]; ++i1) {
        const double c01 = a[0] * g.coord(0, i0) + a[1] * g.coord(1, i1);
        for (int i2 = 0; i2 < g.shape[2]; ++i2)
          weight[node++] = ipow(c01 + a[2] * g.coord(2, i2), power);
      }
  }
  for (int c = 0; c < out.components(); ++c) {
    auto dst = out.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] *= weight[i];
  }
  return out;
}

}  // namespace tomo
