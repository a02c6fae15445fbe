#include <complex>

#include "tomo/fft.hpp"
#include "tomo/tensor_field.hpp"

#include <Eigen/Dense>

namespace tomo {

namespace {

using cplx = std::complex<double>;

void require_decay(const TensorField& u, double boundary_tol, const char* op) {
  if (boundary_tol == kNoDecayCheck) return;
  const double b = boundary_fluctuation(u);
  if (b > boundary_tol)
    throw DecayError(std::string(op) +
                     ": field does not decay at the box boundary (relative "
                     "boundary fluctuation " +
                     std::to_string(b) + ")");
}

/// Forward FFT of every component.
std::vector<std::vector<cplx>> spectral(const TensorField& u) {
  std::vector<std::vector<cplx>> hat(static_cast<std::size_t>(u.components()));
  for (int c = 0; c < u.components(); ++c) {
    auto src = u.component(c);
    auto& h = hat[static_cast<std::size_t>(c)];
    h.assign(src.begin(), src.end());
    fft::forward(u.grid().shape, h.data());
  }
  return hat;
}

TensorField from_spectral(const Grid& grid, int rank,
                          std::vector<std::vector<cplx>>& hat) {
  TensorField out(grid, rank);
  for (int c = 0; c < out.components(); ++c) {
    auto& h = hat[static_cast<std::size_t>(c)];
    fft::inverse(grid.shape, h.data());
    auto dst = out.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = h[i].real();
  }
  return out;
}

/// Runs fn(node, y) over all frequencies, with y the angular frequency
/// vector of the node.
template <typename Fn>
void for_each_frequency(const Grid& grid, Fn&& fn) {
  const int n = grid.dim();
  std::vector<std::vector<double>> freq(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    freq[static_cast<std::size_t>(a)] =
        fft::frequencies(grid.shape[static_cast<std::size_t>(a)],
                         grid.spacing[static_cast<std::size_t>(a)]);
  Vec y(static_cast<std::size_t>(n));
  if (n == 2) {
    std::size_t node = 0;
    for (int i0 = 0; i0 < grid.shape[0]; ++i0) {
      y[0] = freq[0][static_cast<std::size_t>(i0)];
      for (int i1 = 0; i1 < grid.shape[1]; ++i1, ++node) {
        y[1] = freq[1][static_cast<std::size_t>(i1)];
        fn(node, y);
      }
    }
  } else {
    std::size_t node = 0;
    for (int i0 = 0; i0 < grid.shape[0]; ++i0) {
      y[0] = freq[0][static_cast<std::size_t>(i0)];
      for (int i1 = 0; i1 < grid.shape[1]; ++i1) {
        y[1] = freq[1][static_cast<std::size_t>(i1)];
        for (int i2 = 0; i2 < grid.shape[2]; ++i2, ++node) {
          y[2] = freq[2][static_cast<std::size_t>(i2)];
          fn(node, y);
        }
      }
    }
  }
}

}  // namespace

double boundary_fluctuation(const TensorField& u) {
  // Reference the boundary's own mean: a decayed bump (or a constant) shows
  // no boundary fluctuation even when its global mean is large, while a ramp
  // or an undecayed tail does.
  const Grid& g = u.grid();
  double worst = 0.0;
  std::vector<std::size_t> boundary;
  if (g.dim() == 2) {
    const int n0 = g.shape[0], n1 = g.shape[1];
    for (int i1 = 0; i1 < n1; ++i1) {
      boundary.push_back(static_cast<std::size_t>(i1));
      boundary.push_back(static_cast<std::size_t>(n0 - 1) * n1 + static_cast<std::size_t>(i1));
    }
    for (int i0 = 1; i0 + 1 < n0; ++i0) {
      boundary.push_back(static_cast<std::size_t>(i0) * n1);
      boundary.push_back(static_cast<std::size_t>(i0) * n1 + static_cast<std::size_t>(n1 - 1));
    }
  } else {
    const int n0 = g.shape[0], n1 = g.shape[1], n2 = g.shape[2];
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1)
        for (int i2 = 0; i2 < n2; ++i2) {
          if (i0 != 0 && i0 != n0 - 1 && i1 != 0 && i1 != n1 - 1 && i2 != 0 && i2 != n2 - 1)
            continue;
          boundary.push_back((static_cast<std::size_t>(i0) * n1 + static_cast<std::size_t>(i1)) * n2 +
                             static_cast<std::size_t>(i2));
        }
  }
  for (int c = 0; c < u.components(); ++c) {
    auto data = u.component(c);
    double bmean = 0.0;
    for (std::size_t node : boundary) bmean += data[node];
    bmean /= static_cast<double>(boundary.size());
    double peak = 0.0;
    for (double v : data) peak = std::max(peak, std::abs(v - bmean));
    if (peak == 0.0) continue;
    double bdry = 0.0;
    for (std::size_t node : boundary) bdry = std::max(bdry, std::abs(data[node] - bmean));
    worst = std::max(worst, bdry / peak);
  }
  return worst;
}

TensorField d_field(const TensorField& u, double boundary_tol) {
  require_decay(u, boundary_tol, "d_field");
  const int n = u.dim(), m = u.rank();
  const auto& table = sym_index_table(n, m);
  auto hat = spectral(u);
  const int out_comps = sym_dim(n, m + 1);
  std::vector<std::vector<cplx>> out_hat(
      static_cast<std::size_t>(out_comps),
      std::vector<cplx>(u.nodes(), cplx{0.0, 0.0}));
  std::vector<cplx> in_buf(static_cast<std::size_t>(u.components()));
  std::vector<cplx> out_buf(static_cast<std::size_t>(out_comps));
  const cplx iunit{0.0, 1.0};
  for_each_frequency(u.grid(), [&](std::size_t node, const Vec& y) {
    for (int c = 0; c < u.components(); ++c)
      in_buf[static_cast<std::size_t>(c)] = hat[static_cast<std::size_t>(c)][node];
    apply_raise(table, y, in_buf.data(), out_buf.data());
    for (int c = 0; c < out_comps; ++c)
      out_hat[static_cast<std::size_t>(c)][node] = iunit * out_buf[static_cast<std::size_t>(c)];
  });
  return from_spectral(u.grid(), m + 1, out_hat);
}

TensorField div_field(const TensorField& u, double boundary_tol) {
  if (u.rank() < 1) throw ShapeError("div_field: rank-0 input");
  require_decay(u, boundary_tol, "div_field");
  const int n = u.dim(), m = u.rank();
  const auto& table = sym_index_table(n, m);
  auto hat = spectral(u);
  const int out_comps = sym_dim(n, m - 1);
  std::vector<std::vector<cplx>> out_hat(
      static_cast<std::size_t>(out_comps),
      std::vector<cplx>(u.nodes(), cplx{0.0, 0.0}));
  std::vector<cplx> in_buf(static_cast<std::size_t>(u.components()));
  std::vector<cplx> out_buf(static_cast<std::size_t>(out_comps));
  const cplx iunit{0.0, 1.0};
  for_each_frequency(u.grid(), [&](std::size_t node, const Vec& y) {
    for (int c = 0; c < u.components(); ++c)
      in_buf[static_cast<std::size_t>(c)] = hat[static_cast<std::size_t>(c)][node];
    apply_lower(table, y, in_buf.data(), out_buf.data());
    for (int c = 0; c < out_comps; ++c)
      out_hat[static_cast<std::size_t>(c)][node] = iunit * out_buf[static_cast<std::size_t>(c)];
  });
  return from_spectral(u.grid(), m - 1, out_hat);
}

TensorField laplacian_field(const TensorField& u, double boundary_tol) {
  require_decay(u, boundary_tol, "laplacian_field");
  auto hat = spectral(u);
  for_each_frequency(u.grid(), [&](std::size_t node, const Vec& y) {
    const double y2 = dot(y, y);
    for (auto& comp : hat) comp[node] *= -y2;
  });
  return from_spectral(u.grid(), u.rank(), hat);
}

TensorField solenoidal_project(const TensorField& u) {
  if (u.rank() < 1) throw ShapeError("solenoidal_project: rank-0 input");
  const int n = u.dim(), m = u.rank();
  const auto& table_m = sym_index_table(n, m);        // for lowering
  const auto& table_w = sym_index_table(n, m - 1);    // for raising back
  const int wdim = sym_dim(n, m - 1);
  auto hat = spectral(u);

  Eigen::MatrixXd A(wdim, wdim);
  Eigen::VectorXd col(wdim);
  std::vector<cplx> in_buf(static_cast<std::size_t>(u.components()));
  std::vector<cplx> jw(static_cast<std::size_t>(wdim));
  std::vector<cplx> w(static_cast<std::size_t>(wdim));
  std::vector<cplx> iw(static_cast<std::size_t>(u.components()));
  std::vector<double> basis(static_cast<std::size_t>(wdim), 0.0);
  std::vector<double> raised(static_cast<std::size_t>(u.components()));
  std::vector<double> lowered(static_cast<std::size_t>(wdim));

  for_each_frequency(u.grid(), [&](std::size_t node, const Vec& y) {
    if (dot(y, y) == 0.0) return;  // keep the mean
    // A = j_y i_y on the rank m-1 space
    for (int b = 0; b < wdim; ++b) {
      std::fill(basis.begin(), basis.end(), 0.0);
      basis[static_cast<std::size_t>(b)] = 1.0;
      apply_raise(table_w, y, basis.data(), raised.data());
      apply_lower(table_m, y, raised.data(), lowered.data());
      for (int r = 0; r < wdim; ++r) col[r] = lowered[static_cast<std::size_t>(r)];
      A.col(b) = col;
    }
    for (int c = 0; c < u.components(); ++c)
      in_buf[static_cast<std::size_t>(c)] = hat[static_cast<std::size_t>(c)][node];
    apply_lower(table_m, y, in_buf.data(), jw.data());
    // solve A w = j_y u, subtract i_y w
    Eigen::VectorXd rhs_re(wdim), rhs_im(wdim);
    for (int r = 0; r < wdim; ++r) {
      rhs_re[r] = jw[static_cast<std::size_t>(r)].real();
      rhs_im[r] = jw[static_cast<std::size_t>(r)].imag();
    }
    auto solver = A.partialPivLu();  // non-symmetric in the raw coefficient basis
    Eigen::VectorXd sol_re = solver.solve(rhs_re);
    Eigen::VectorXd sol_im = solver.solve(rhs_im);
    for (int r = 0; r < wdim; ++r)
      w[static_cast<std::size_t>(r)] = cplx{sol_re[r], sol_im[r]};
    apply_raise(table_w, y, w.data(), iw.data());
    for (int c = 0; c < u.components(); ++c)
      hat[static_cast<std::size_t>(c)][node] -= iw[static_cast<std::size_t>(c)];
  });
  return from_spectral(u.grid(), m, hat);
}

TensorField compose_potentials(const std::vector<TensorField>& vs, double boundary_tol) {
  if (vs.empty()) throw ShapeError("compose_potentials: empty input");
  const int m = vs.front().rank();
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i].rank() != m - static_cast<int>(i))
      throw ShapeError("compose_potentials: vs[i] must have rank m-i");
  TensorField acc = vs.back();
  for (std::size_t i = vs.size() - 1; i-- > 0;) {
    TensorField d = d_field(acc, boundary_tol);
    acc = vs[i];
    acc += d;
  }
  return acc;
}

double relative_divergence(const TensorField& u) {
  const double nu = l2_norm(u);
  if (nu == 0.0) return 0.0;
  // RMS wavenumber of u
  auto hat = spectral(u);
  double num = 0.0, den = 0.0;
  for_each_frequency(u.grid(), [&](std::size_t node, const Vec& y) {
    const double y2 = dot(y, y);
    for (auto& comp : hat) {
      const double a2 = std::norm(comp[node]);
      num += y2 * a2;
      den += a2;
    }
  });
  const double k_rms = den > 0.0 ? std::sqrt(num / den) : 0.0;
  if (k_rms == 0.0) return 0.0;
  return l2_norm(div_field(u, kNoDecayCheck)) / (nu * k_rms);
}

}  // namespace tomo
