#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "tomo/common.hpp"

namespace tomo {

/// Flat key = value experiment description. Every numerical default lives
/// here and is echoed into reports, so a run is reproducible from its
/// report alone.
struct ExperimentConfig {
  int n = 2;
  int m = 1;
  int grid_n = 256;
  double half_extent = 5.0;
  int directions = 0;  // 0: 2 * grid_n
  int p_count = 0;     // 0: from grid spacing
  std::string phantom_kind = "gaussian_poly";
  std::uint64_t seed = 1;
  std::string pipeline = "lrt";  // lrt | trt | both
  double noise = 0.0;
  double window_cutoff = 0.5;
  double output_cutoff = 0.10;
  int interp_order = 3;
  double quad_step_factor = 0.25;
  double boundary_tol = 1e-10;
  std::string out_dir = "out";
  bool pgm = false;
  bool quiet = false;
  // verify-only knobs
  double tol_scale = 1.0;
  int verify_grid_n = 128;
  int verify_radon_n = 192;
  bool verify_3d = true;
  int verify_grid_n3 = 48;

  int effective_directions() const { return directions > 0 ? directions : 2 * grid_n; }

  void validate() const;  // throws ConfigError

  static ExperimentConfig from_file(const std::filesystem::path& path);
  static ExperimentConfig from_text(const std::string& text);
  std::string to_text() const;
};

}  // namespace tomo
