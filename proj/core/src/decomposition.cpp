#include "tomo/decomposition.hpp"

#include <Eigen/Dense>
#include <complex>

#include "tomo/fft.hpp"

namespace tomo {

namespace {

using cplx = std::complex<double>;

std::vector<std::vector<cplx>> spectral(const TensorField& u) {
  std::vector<std::vector<cplx>> hat(static_cast<std::size_t>(u.components()));
  for (int c = 0; c < u.components(); ++c) {
    auto src = u.component(c);
    hat[static_cast<std::size_t>(c)].assign(src.begin(), src.end());
    fft::forward(u.grid().shape, hat[static_cast<std::size_t>(c)].data());
  }
  return hat;
}

TensorField from_spectral(const Grid& grid, int rank, std::vector<std::vector<cplx>>& hat) {
  TensorField out(grid, rank);
  for (int c = 0; c < out.components(); ++c) {
    fft::inverse(grid.shape, hat[static_cast<std::size_t>(c)].data());
    auto dst = out.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i)
      dst[i] = hat[static_cast<std::size_t>(c)][i].real();
  }
  return out;
}

template <typename Fn>
void for_each_frequency(const Grid& grid, Fn&& fn) {
  const int n = grid.dim();
  std::vector<std::vector<double>> freq(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    freq[static_cast<std::size_t>(a)] = fft::frequencies(
        grid.shape[static_cast<std::size_t>(a)], grid.spacing[static_cast<std::size_t>(a)]);
  Vec y(static_cast<std::size_t>(n));
  std::size_t node = 0;
  if (n == 2) {
    for (int i0 = 0; i0 < grid.shape[0]; ++i0) {
      y[0] = freq[0][static_cast<std::size_t>(i0)];
      for (int i1 = 0; i1 < grid.shape[1]; ++i1, ++node) {
        y[1] = freq[1][static_cast<std::size_t>(i1)];
        fn(node, y);
      }
    }
  } else {
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

void fill_gauge(const TensorField& h, GaugeReport* gauge) {
  if (!gauge) return;
  gauge->input_mean = mean_component_max(h);
  const double scale = h.max_abs();
  gauge->warned = scale > 0.0 && gauge->input_mean > 1e-8 * scale;
}

}  // namespace

TensorField solve_delta_d_k(const TensorField& h, int k, GaugeReport* gauge) {
  if (k < 0) throw ShapeError("solve_delta_d_k: negative order");
  fill_gauge(h, gauge);
  if (k == 0) return h;
  const int n = h.dim(), r = h.rank();
  const int dim_r = sym_dim(n, r);
  // tables for ranks r .. r+k (raising), and back down (lowering)
  std::vector<const SymIndexTable*> tables;
  for (int j = 0; j <= k; ++j) tables.push_back(&sym_index_table(n, r + j));

  auto hat = spectral(h);
  // sign: div^k d^k corresponds to (-1)^k (j_y^k i_y^k) on the transforms
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;

  Eigen::MatrixXd A(dim_r, dim_r);
  std::vector<std::vector<double>> stage(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j)
    stage[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(sym_dim(n, r + j)));

  for_each_frequency(h.grid(), [&](std::size_t node, const Vec& y) {
    if (dot(y, y) == 0.0) {
      for (int c = 0; c < dim_r; ++c) hat[static_cast<std::size_t>(c)][node] = cplx{0.0, 0.0};
      return;
    }
    for (int b = 0; b < dim_r; ++b) {
      auto& s0 = stage[0];
      std::fill(s0.begin(), s0.end(), 0.0);
      s0[static_cast<std::size_t>(b)] = 1.0;
      for (int j = 0; j < k; ++j)
        apply_raise(*tables[static_cast<std::size_t>(j)], y,
                    stage[static_cast<std::size_t>(j)].data(),
                    stage[static_cast<std::size_t>(j) + 1].data());
      for (int j = k; j > 0; --j)
        apply_lower(*tables[static_cast<std::size_t>(j)], y,
                    stage[static_cast<std::size_t>(j)].data(),
                    stage[static_cast<std::size_t>(j) - 1].data());
      for (int row = 0; row < dim_r; ++row) A(row, b) = stage[0][static_cast<std::size_t>(row)];
    }
    Eigen::VectorXd rhs_re(dim_r), rhs_im(dim_r);
    for (int c = 0; c < dim_r; ++c) {
      rhs_re[c] = sign * hat[static_cast<std::size_t>(c)][node].real();
      rhs_im[c] = sign * hat[static_cast<std::size_t>(c)][node].imag();
    }
    // self-adjoint only under the multiplicity-weighted inner product, so
    // the raw-basis matrix is not symmetric
    const auto solver = A.partialPivLu();
    const Eigen::VectorXd sol_re = solver.solve(rhs_re);
    const Eigen::VectorXd sol_im = solver.solve(rhs_im);
    for (int c = 0; c < dim_r; ++c)
      hat[static_cast<std::size_t>(c)][node] = cplx{sol_re[c], sol_im[c]};
  });
  return from_spectral(h.grid(), r, hat);
}

TensorField poisson_invert(const TensorField& h, GaugeReport* gauge) {
  fill_gauge(h, gauge);
  auto hat = spectral(h);
  for_each_frequency(h.grid(), [&](std::size_t node, const Vec& y) {
    const double y2 = dot(y, y);
    for (auto& comp : hat) comp[node] = y2 == 0.0 ? cplx{0.0, 0.0} : comp[node] / (-y2);
  });
  return from_spectral(h.grid(), h.rank(), hat);
}

DecompositionResult decompose(const TensorField& f, double residual_tol) {
  const int m = f.rank();
  DecompositionResult result;
  result.gauge = "zero-mean gauge: potential generators pinned to mean 0";
  TensorField w = f;
  for (int i = 0; i < m; ++i) {
    result.components.push_back(solenoidal_project(w));
    const TensorField rhs = div_field(w, kNoDecayCheck);
    w = solve_delta_d_k(rhs, 1);
  }
  result.components.push_back(w);  // rank 0
  for (int i = 0; i < m; ++i)
    result.divergence_residuals.push_back(relative_divergence(result.components[static_cast<std::size_t>(i)]));
  result.residual = l2_error(compose_potentials(result.components, kNoDecayCheck), f);
  if (result.residual > residual_tol)
    throw NumericalError("decompose: recomposition residual " + std::to_string(result.residual) +
                         " exceeds " + std::to_string(residual_tol));
  return result;
}

}  // namespace tomo
