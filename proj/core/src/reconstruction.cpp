#include "tomo/reconstruction.hpp"

#include <chrono>
#include <cmath>

#include <complex>

#include "hyperplane_quadrature.hpp"
#include "tomo/fft.hpp"

namespace tomo {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

QuadratureSpec correction_quad(const PipelineParams& params) {
  // Correction fields are built from recovered components, which carry
  // backprojection residue; the decay precondition cannot apply to them.
  return QuadratureSpec{params.quad_step_factor, kNoDecayCheck, params.interp_order};
}

/// Isotropic low-pass with a narrow cosine transition (cutoff to
/// cutoff + 0.1 of Nyquist); strips backprojection residue from recovered
/// components. The signal band of the target fields ends well below the
/// default cutoff, so this is a pure noise filter.
TensorField spectral_lowpass(const TensorField& u, double cutoff) {
  using cplx = std::complex<double>;
  const Grid& grid = u.grid();
  std::vector<std::vector<double>> freq(static_cast<std::size_t>(grid.dim()));
  double nyquist2 = 0.0;
  for (int a = 0; a < grid.dim(); ++a) {
    freq[static_cast<std::size_t>(a)] = fft::frequencies(
        grid.shape[static_cast<std::size_t>(a)], grid.spacing[static_cast<std::size_t>(a)]);
    const double ny = M_PI / grid.spacing[static_cast<std::size_t>(a)];
    nyquist2 += ny * ny;
  }
  const double nyquist = std::sqrt(nyquist2);
  TensorField out(grid, u.rank());
  for (int c = 0; c < u.components(); ++c) {
    auto src_comp = u.component(c);
    std::vector<cplx> hat(src_comp.begin(), src_comp.end());
    fft::forward(grid.shape, hat.data());
    std::size_t node = 0;
    for (int i0 = 0; i0 < grid.shape[0]; ++i0) {
      const double y0 = freq[0][static_cast<std::size_t>(i0)];
      for (int i1 = 0; i1 < grid.shape[1]; ++i1, ++node) {
        const double y1 = freq[1][static_cast<std::size_t>(i1)];
        {
          const double a = std::sqrt(y0 * y0 + y1 * y1) / nyquist;
          double w = 0.0;
          if (a <= cutoff)
            w = 1.0;
          else if (a < cutoff + 0.1)
            w = 0.5 * (1.0 + std::cos(M_PI * (a - cutoff) / 0.1));
          hat[node] *= w;
        }
      }
    }
    fft::inverse(grid.shape, hat.data());
    auto dst = out.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = hat[i].real();
  }
  return out;
}

MultiIndex extend_inplane(const MultiIndex& ell) {
  std::vector<int> full = ell.entries;
  full.push_back(0);
  return MultiIndex(std::move(full));
}

/// Builds the componentwise sinogram of a rank-r tensor quantity from its
/// in-plane frame coefficients (omega-carrying coefficients set to zero by
/// the kernel results) and inverts it componentwise.
TensorField invert_from_inplane_coefficients(const std::vector<MultiIndex>& inplane,
                                             const std::vector<Sinogram>& coeff,
                                             int target_rank, const Grid& grid,
                                             double window_cutoff) {
  if (inplane.empty() || inplane.size() != coeff.size())
    throw ShapeError("invert_from_inplane_coefficients: dataset incomplete");
  const DirectionSet& dirs = coeff.front().dirs;
  const PGrid& pgrid = coeff.front().pgrid;
  const int n = dirs.dim;
  TensorSinogram assembled(dirs, pgrid, n, target_rank);
  const int comps = assembled.components();
  const std::size_t block =
      static_cast<std::size_t>(dirs.count()) * static_cast<std::size_t>(pgrid.count);
  parallel_for(static_cast<std::size_t>(dirs.count()), [&](std::size_t d) {
    const auto basis = frame_monomials(dirs.frames[d], target_rank);
    for (std::size_t j = 0; j < inplane.size(); ++j) {
      const int pos = basis.position(extend_inplane(inplane[j]));
      const auto row = coeff[j].row(static_cast<int>(d));
      for (int c = 0; c < comps; ++c) {
        const double w = basis.dual_weights[static_cast<std::size_t>(pos)] *
                         basis.monomials[static_cast<std::size_t>(pos)][c];
        if (w == 0.0) continue;
        double* dst = assembled.data.data() + static_cast<std::size_t>(c) * block +
                      d * static_cast<std::size_t>(pgrid.count);
        for (int ip = 0; ip < pgrid.count; ++ip)
          dst[ip] += w * row[static_cast<std::size_t>(ip)];
      }
    }
  });
  TensorField out(grid, target_rank);
  for (int c = 0; c < comps; ++c) {
    const TensorField comp_field = radon_invert(assembled.component(c), grid, window_cutoff);
    auto dst = out.component(c);
    std::copy(comp_field.component(0).begin(), comp_field.component(0).end(), dst.begin());
    double mean = 0.0;
    for (double v : dst) mean += v;
    mean /= static_cast<double>(dst.size());
    for (double& v : dst) v -= mean;  // zero-mean gauge
  }
  return out;
}

SymTensor wlrt_monomial(const Frame& frame, int k, const MultiIndex& ell) {
  SymTensor mono = vec_power(frame.basis[0], ell[0] + k);
  for (int a = 1; a < frame.dim() - 1; ++a)
    mono = sym_product(mono, vec_power(frame.basis[static_cast<std::size_t>(a)], ell[a]));
  return mono;
}

void require_n2(const DirectionSet& dirs, const char* op) {
  if (dirs.dim != 2)
    throw ShapeError(std::string(op) + ": pipelines run in n = 2 only");
}

void check_dataset(const WeightedDataset& ds, TransformFamily family, int k, int n, int m,
                   const char* op) {
  if (ds.family != family)
    throw ShapeError(std::string(op) + ": dataset family mismatch (need " +
                     family_name(family) + ")");
  for (const auto& ell : dataset_indices(family, n, m, k))
    if (!ds.has(ell))
      throw ShapeError(std::string(op) + ": dataset " + family_name(family) +
                       " order " + std::to_string(k) +
                       " is missing multi-index " + ell.str());
}

}  // namespace

TensorField recover_v0_from_lrt(const WeightedDataset& lrt_data, const Grid& grid,
                                const PipelineParams& params) {
  if (lrt_data.sinograms.empty()) throw ShapeError("recover_v0_from_lrt: empty dataset");
  require_n2(lrt_data.sinograms.front().dirs, "recover_v0_from_lrt");
  const int m = lrt_data.field_rank;
  check_dataset(lrt_data, TransformFamily::lrt, 0, 2, m, "recover_v0_from_lrt");
  if (m == 0)  // plain scalar inversion, bit for bit
    return radon_invert(lrt_data.sinograms.front(), grid, params.window_cutoff);
  return spectral_lowpass(
      invert_from_inplane_coefficients(lrt_data.indices, lrt_data.sinograms, m, grid,
                                       params.window_cutoff),
      params.output_cutoff);
}

TensorField recover_vk_from_wlrt(int k, const WeightedDataset& wlrt_k,
                                 const std::vector<TensorField>& known_prefix,
                                 const Grid& grid, const PipelineParams& params) {
  if (wlrt_k.sinograms.empty()) throw ShapeError("recover_vk_from_wlrt: empty dataset");
  require_n2(wlrt_k.sinograms.front().dirs, "recover_vk_from_wlrt");
  if (static_cast<int>(known_prefix.size()) != k)
    throw ShapeError("recover_vk_from_wlrt: need the k components v_0..v_{k-1}");
  const int m = known_prefix.front().rank();
  if (k < 1 || k > m) throw ShapeError("recover_vk_from_wlrt: 1 <= k <= m required");
  check_dataset(wlrt_k, TransformFamily::weighted_lrt, k, 2, m, "recover_vk_from_wlrt");

  const DirectionSet& dirs = wlrt_k.sinograms.front().dirs;
  const PGrid& pgrid = wlrt_k.sinograms.front().pgrid;
  const QuadratureSpec quad = correction_quad(params);
  // prefix field v_0 + d v_1 + ... + d^{k-1} v_{k-1}
  const TensorField prefix = compose_potentials(known_prefix, kNoDecayCheck);
  const double factor = 1.0 / ((k % 2 == 0 ? 1.0 : -1.0) * factorial(k));

  // The prefix correction R(lap(<x,b1>^k <prefix, monomial>)) equals the
  // second p-derivative of the prefix's own weighted transform, so it is
  // subtracted in the sinogram domain before differentiating: the shared
  // quadrature nodes then cancel the interpolation bias instead of feeding
  // it through the derivative.
  std::vector<Sinogram> coeff;
  coeff.reserve(wlrt_k.indices.size());
  for (std::size_t j = 0; j < wlrt_k.indices.size(); ++j) {
    const MultiIndex& ell = wlrt_k.indices[j];
    Sinogram diff = wlrt_k.sinograms[j];
    parallel_for(static_cast<std::size_t>(dirs.count()), [&](std::size_t d) {
      const Frame& frame = dirs.frames[d];
      std::vector<double> row(static_cast<std::size_t>(pgrid.count));
      std::vector<int> tpowers(static_cast<std::size_t>(prefix.dim() - 1), 0);
      tpowers[0] = k;
      transform_row(row, prefix, dirs.directions[d], frame, pgrid, quad,
                    wlrt_monomial(frame, k, ell), tpowers);
      auto dst = diff.row(static_cast<int>(d));
      for (int ip = 0; ip < pgrid.count; ++ip)
        dst[static_cast<std::size_t>(ip)] -= row[static_cast<std::size_t>(ip)];
    });
    Sinogram target = p_derivative(diff, 2, params.window_cutoff);
    target *= factor;
    coeff.push_back(std::move(target));
  }
  const TensorField lap_vk = invert_from_inplane_coefficients(
      wlrt_k.indices, coeff, m - k, grid, params.window_cutoff);
  return spectral_lowpass(poisson_invert(lap_vk), params.output_cutoff);
}

TensorField recover_vm_from_trt(const Sinogram& trt_data, const Grid& grid, int m,
                                const PipelineParams& params) {
  require_n2(trt_data.dirs, "recover_vm_from_trt");
  if (m == 0) return radon_invert(trt_data, grid, params.window_cutoff);
  const Sinogram dm = p_derivative(trt_data, m, params.window_cutoff);
  TensorField h = radon_invert(dm, grid, params.window_cutoff);
  {
    auto dst = h.component(0);
    double mean = 0.0;
    for (double v : dst) mean += v;
    mean /= static_cast<double>(dst.size());
    for (double& v : dst) v -= mean;  // zero-mean gauge
  }
  return spectral_lowpass(solve_delta_d_k(h, m), params.output_cutoff);
}

TensorField recover_vmk_from_wtrt(int k, const WeightedDataset& wtrt_k,
                                  const std::vector<TensorField>& known_tail,
                                  const Grid& grid, int m,
                                  const PipelineParams& params) {
  if (wtrt_k.sinograms.empty()) throw ShapeError("recover_vmk_from_wtrt: empty dataset");
  require_n2(wtrt_k.sinograms.front().dirs, "recover_vmk_from_wtrt");
  if (static_cast<int>(known_tail.size()) != k)
    throw ShapeError("recover_vmk_from_wtrt: need the k components v_{m-k+1}..v_m");
  if (k < 1 || k > m) throw ShapeError("recover_vmk_from_wtrt: 1 <= k <= m required");
  check_dataset(wtrt_k, TransformFamily::weighted_trt, k, 2, m, "recover_vmk_from_wtrt");
  for (int r = m - k + 1; r <= m; ++r)
    if (known_tail[static_cast<std::size_t>(r - (m - k + 1))].rank() != m - r)
      throw ShapeError("recover_vmk_from_wtrt: tail component rank mismatch");

  const DirectionSet& dirs = wtrt_k.sinograms.front().dirs;
  const PGrid& pgrid = wtrt_k.sinograms.front().pgrid;
  const QuadratureSpec quad = correction_quad(params);

  // known tail d^{m-k+1} v_{m-k+1} + ... + d^m v_m assembled in physical
  // space; its weighted transversal transform is subtracted from the data
  // before the p-derivatives (the weight-power expansion then leaves only
  // the fall(m,k) <b1^(k), div^{m-k} d^{m-k} v_{m-k}> term).
  TensorField tail_field(grid, m);
  for (int r = m - k + 1; r <= m; ++r) {
    TensorField p = known_tail[static_cast<std::size_t>(r - (m - k + 1))];
    for (int a = 0; a < r; ++a) p = d_field(p, kNoDecayCheck);
    tail_field += p;
  }

  const double lead = falling_factorial(m, k);
  std::vector<Sinogram> coeff;
  coeff.reserve(wtrt_k.indices.size());
  for (std::size_t jdx = 0; jdx < wtrt_k.indices.size(); ++jdx) {
    const MultiIndex& ell = wtrt_k.indices[jdx];
    Sinogram diff = wtrt_k.sinograms[jdx];
    parallel_for(static_cast<std::size_t>(dirs.count()), [&](std::size_t d) {
      const Frame& frame = dirs.frames[d];
      std::vector<double> row(static_cast<std::size_t>(pgrid.count));
      transform_row(row, tail_field, dirs.directions[d], frame, pgrid, quad,
                    vec_power(frame.omega, m), ell.entries);
      auto dst = diff.row(static_cast<int>(d));
      for (int ip = 0; ip < pgrid.count; ++ip)
        dst[static_cast<std::size_t>(ip)] -= row[static_cast<std::size_t>(ip)];
    });
    Sinogram target = p_derivative(diff, m, params.window_cutoff);
    target *= 1.0 / lead;
    coeff.push_back(std::move(target));
  }
  const TensorField w_field = invert_from_inplane_coefficients(
      wtrt_k.indices, coeff, k, grid, params.window_cutoff);
  return spectral_lowpass(solve_delta_d_k(w_field, m - k), params.output_cutoff);
}

namespace {

ReconstructionReport finish_report(std::vector<TensorField> components,
                                   std::vector<StageDiagnostics> stages,
                                   const std::vector<TensorField>* truth,
                                   const TensorField* truth_field,
                                   const PipelineParams& params) {
  ReconstructionReport report;
  report.params = params;
  report.components = std::move(components);
  report.stages = std::move(stages);
  report.composed = compose_potentials(report.components, kNoDecayCheck);
  report.component_errors.assign(report.components.size(),
                                 std::numeric_limits<double>::quiet_NaN());
  if (truth) {
    if (truth->size() != report.components.size())
      throw ShapeError("reconstruct: ground truth component count mismatch");
    for (std::size_t i = 0; i < report.components.size(); ++i)
      report.component_errors[i] = l2_error(report.components[i], (*truth)[i]);
  }
  if (truth_field) report.composed_error = l2_error(report.composed, *truth_field);
  return report;
}

void require_weighted_orders(const TransformData& data, int m, const char* op) {
  if (static_cast<int>(data.weighted.size()) != m)
    throw ShapeError(std::string(op) + ": need weighted datasets for every order 1..m");
  for (int k = 1; k <= m; ++k)
    if (data.weighted[static_cast<std::size_t>(k - 1)].order != k)
      throw ShapeError(std::string(op) + ": weighted dataset for order " +
                       std::to_string(k) + " is missing");
}

}  // namespace

ReconstructionReport reconstruct_from_lrt(const TransformData& data, const Grid& grid,
                                          int m, const std::vector<TensorField>* truth,
                                          const TensorField* truth_field,
                                          const PipelineParams& params) {
  require_weighted_orders(data, m, "reconstruct_from_lrt");
  std::vector<TensorField> components;
  std::vector<StageDiagnostics> stages;
  auto t0 = clock_type::now();
  components.push_back(recover_v0_from_lrt(data.base, grid, params));
  stages.push_back({"v0-from-lrt", 0, data.base.sinograms.front().l2(),
                    l2_norm(components.back()), seconds_since(t0)});
  for (int k = 1; k <= m; ++k) {
    t0 = clock_type::now();
    const auto& ds = data.weighted[static_cast<std::size_t>(k - 1)];
    components.push_back(recover_vk_from_wlrt(k, ds, components, grid, params));
    stages.push_back({"v" + std::to_string(k) + "-from-wlrt", 2,
                      ds.sinograms.front().l2(), l2_norm(components.back()),
                      seconds_since(t0)});
  }
  return finish_report(std::move(components), std::move(stages), truth, truth_field, params);
}

ReconstructionReport reconstruct_from_trt(const TransformData& data, const Grid& grid,
                                          int m, const std::vector<TensorField>* truth,
                                          const TensorField* truth_field,
                                          const PipelineParams& params) {
  require_weighted_orders(data, m, "reconstruct_from_trt");
  if (data.base.sinograms.empty()) throw ShapeError("reconstruct_from_trt: empty dataset");
  std::vector<TensorField> tail;  // built back to front: v_m first
  std::vector<StageDiagnostics> stages;
  auto t0 = clock_type::now();
  tail.push_back(recover_vm_from_trt(data.base.sinograms.front(), grid, m, params));
  stages.push_back({"v" + std::to_string(m) + "-from-trt", m,
                    data.base.sinograms.front().l2(), l2_norm(tail.back()),
                    seconds_since(t0)});
  for (int k = 1; k <= m; ++k) {
    t0 = clock_type::now();
    const auto& ds = data.weighted[static_cast<std::size_t>(k - 1)];
    // known tail in ascending component order v_{m-k+1} .. v_m
    std::vector<TensorField> known(tail.rbegin(), tail.rend());
    tail.push_back(recover_vmk_from_wtrt(k, ds, known, grid, m, params));
    stages.push_back({"v" + std::to_string(m - k) + "-from-wtrt", m,
                      ds.sinograms.front().l2(), l2_norm(tail.back()),
                      seconds_since(t0)});
  }
  std::vector<TensorField> components(tail.rbegin(), tail.rend());
  return finish_report(std::move(components), std::move(stages), truth, truth_field, params);
}

}  // namespace tomo
