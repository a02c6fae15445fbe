#pragma once

#include <optional>
#include <string>

#include "tomo/decomposition.hpp"
#include "tomo/tensor_transforms.hpp"

namespace tomo {

/// Knobs shared by both pipelines; every report echoes them.
struct PipelineParams {
  double window_cutoff = 0.5;   // rolloff for the ramp and p-derivatives
  double output_cutoff = 0.10;  // isotropic low-pass on recovered components;
                                // composing with d re-amplifies anything the
                                // inversions leave above the signal band
  double quad_step_factor = 0.25;
  int interp_order = 3;  // corrections re-transform physical-space fields
};

struct StageDiagnostics {
  std::string name;
  int derivative_order = 0;
  double data_scale = 0.0;    // L2 of the stage's input sinogram(s)
  double output_norm = 0.0;   // L2 of the recovered component
  double seconds = 0.0;
};

struct ReconstructionReport {
  std::vector<TensorField> components;  // v_0 .. v_m
  TensorField composed;
  std::vector<double> component_errors;  // vs ground truth; NaN when absent
  double composed_error = std::numeric_limits<double>::quiet_NaN();
  std::vector<StageDiagnostics> stages;
  PipelineParams params;
};

/// Inputs of one pipeline: the unweighted dataset plus the weighted
/// datasets for k = 1..m (weighted[k-1] has order k).
struct TransformData {
  WeightedDataset base;
  std::vector<WeightedDataset> weighted;
};

/// Solenoidal part from the full longitudinal dataset: assembles the
/// componentwise transform of v0 out of the in-plane coefficients (the
/// omega-carrying coefficients vanish for divergence-free fields) and
/// inverts componentwise. n = 2.
TensorField recover_v0_from_lrt(const WeightedDataset& lrt_data, const Grid& grid,
                                const PipelineParams& params = {});

/// Potential generator v_k from the order-k weighted longitudinal dataset
/// given v_0 .. v_{k-1}: per in-plane index, coefficient data
/// (1/((-1)^k k!)) [d^2/dp^2 wLRT - R(lap(<x,b1>^k <prefix, monomial>))],
/// then componentwise inversion and a Poisson solve. n = 2.
TensorField recover_vk_from_wlrt(int k, const WeightedDataset& wlrt_k,
                                 const std::vector<TensorField>& known_prefix,
                                 const Grid& grid, const PipelineParams& params = {});

/// v_m from the transversal transform: invert d^m/dp^m data to get
/// div^m d^m v_m, then the order-m elliptic solve. n = 2.
TensorField recover_vm_from_trt(const Sinogram& trt_data, const Grid& grid, int m,
                                const PipelineParams& params = {});

/// v_{m-k} from the order-k weighted transversal dataset given the tail
/// v_{m-k+1} .. v_m. n = 2.
TensorField recover_vmk_from_wtrt(int k, const WeightedDataset& wtrt_k,
                                  const std::vector<TensorField>& known_tail,
                                  const Grid& grid, int m,
                                  const PipelineParams& params = {});

/// Theorem-style full pipelines; ground truth (v_0..v_m, then f) is optional
/// and only feeds the error columns of the report.
ReconstructionReport reconstruct_from_lrt(const TransformData& data, const Grid& grid,
                                          int m, const std::vector<TensorField>* truth = nullptr,
                                          const TensorField* truth_field = nullptr,
                                          const PipelineParams& params = {});

ReconstructionReport reconstruct_from_trt(const TransformData& data, const Grid& grid,
                                          int m, const std::vector<TensorField>* truth = nullptr,
                                          const TensorField* truth_field = nullptr,
                                          const PipelineParams& params = {});

}  // namespace tomo
