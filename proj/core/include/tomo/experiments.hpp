#pragma once

#include <filesystem>
#include <iosfwd>

#include "tomo/config.hpp"
#include "tomo/oracle.hpp"
#include "tomo/phantom.hpp"
#include "tomo/reconstruction.hpp"

namespace tomo {

/// The CLI subcommands as library calls (the binary in tools/ is a thin
/// wrapper, so tests drive these directly).

struct PhantomOutputs {
  std::vector<std::filesystem::path> files;  // f.sttf then v0..vm
  double decomposition_residual = 0.0;
};

/// Ground-truth components (solenoidal v_0..v_{m-1}, free v_m), their
/// composition f, STTF files and a metadata record.
PhantomOutputs cmd_phantom(const ExperimentConfig& cfg);

/// Forward datasets for the configured pipeline(s); one SGRM per record.
std::vector<std::filesystem::path> cmd_forward(const ExperimentConfig& cfg,
                                               const std::filesystem::path& field_file);

struct ReconstructOutputs {
  std::vector<std::filesystem::path> files;
  double lrt_composed_error = std::numeric_limits<double>::quiet_NaN();
  double trt_composed_error = std::numeric_limits<double>::quiet_NaN();
};

/// Runs the configured pipeline(s) on a directory of SGRM files; compares
/// against ground-truth STTFs when present. Throws IoError when a required
/// dataset record is missing.
ReconstructOutputs cmd_reconstruct(const ExperimentConfig& cfg,
                                   const std::filesystem::path& data_dir);

/// Theorem-3 splitting of a field file; writes components and metadata.
std::vector<std::filesystem::path> cmd_decompose(const ExperimentConfig& cfg,
                                                 const std::filesystem::path& field_file);

/// Identity suite; returns the process exit code (0 pass, 2 tolerance breach).
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out);

/// Stage timings and an error-vs-resolution sweep (m = 1 pipeline), CSV.
int cmd_benchmark(const ExperimentConfig& cfg, std::ostream& out);

/// Seeded Gaussian perturbation, level relative to the sinogram peak.
void add_sinogram_noise(Sinogram& s, double level, std::uint64_t seed);

/// In-memory helpers shared by cmd_* and the test suites.
/// Ground-truth components scaled so every d^i v_i contributes unit L2 mass
/// to the composition (unbalanced stacks make the stage subtractions
/// ill-conditioned for reasons unrelated to the transforms).
std::vector<TensorField> balanced_truth_components(
    const Grid& grid, int m, std::uint64_t seed,
    PhantomSpec::Kind kind = PhantomSpec::Kind::gaussian_poly);
std::vector<TensorField> make_truth_components(const ExperimentConfig& cfg, const Grid& grid);
TransformData forward_data(const TensorField& f, TransformFamily base,
                           const DirectionSet& dirs, const PGrid& pgrid,
                           const QuadratureSpec& quad);

}  // namespace tomo
