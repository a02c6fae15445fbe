// tomo: phantoms, forward transforms, reconstructions and identity checks
// for symmetric tensor fields on plane grids.
//
// Exit status: 0 success, 1 configuration error, 2 numerical failure,
// 3 I/O error.

#include <CLI11.hpp>

#include <iostream>

#include "tomo/experiments.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool quiet = false;
};

tomo::ExperimentConfig load_config(const CommonArgs& args) {
  tomo::ExperimentConfig cfg;
  if (!args.config_path.empty())
    cfg = tomo::ExperimentConfig::from_file(args.config_path);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (args.seed_set) cfg.seed = args.seed;
  if (args.quiet) cfg.quiet = true;
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "flat key = value config file");
  cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
  cmd->add_option("--seed", args.seed, "seed (overrides config)")
      ->each([&](const std::string&) { args.seed_set = true; });
  cmd->add_flag("--quiet", args.quiet, "suppress progress output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Radon transforms on symmetric tensor fields"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string field_file;
  std::string data_dir;

  CLI::App* phantom = app.add_subcommand("phantom", "generate a phantom field and ground truth");
  add_common(phantom, args);

  CLI::App* forward = app.add_subcommand("forward", "compute transform datasets for a field");
  add_common(forward, args);
  forward->add_option("field", field_file, "STTF field file")->required();

  CLI::App* reconstruct = app.add_subcommand("reconstruct", "run the inversion pipelines");
  add_common(reconstruct, args);
  reconstruct->add_option("data", data_dir, "directory with SGRM datasets")->required();

  CLI::App* decompose = app.add_subcommand("decompose", "solenoidal-potential splitting of a field");
  add_common(decompose, args);
  decompose->add_option("field", field_file, "STTF field file")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the operator identity suite");
  add_common(verify, args);

  CLI::App* benchmark = app.add_subcommand("benchmark", "stage timings and resolution sweep");
  add_common(benchmark, args);

  CLI11_PARSE(app, argc, argv);

  try {
    const tomo::ExperimentConfig cfg = load_config(args);
    if (phantom->parsed()) {
      const auto out = tomo::cmd_phantom(cfg);
      if (!cfg.quiet) {
        std::cout << "wrote " << out.files.size() << " files to " << cfg.out_dir
                  << " (decomposition residual " << out.decomposition_residual << ")\n";
      }
    } else if (forward->parsed()) {
      const auto files = tomo::cmd_forward(cfg, field_file);
      if (!cfg.quiet) std::cout << "wrote " << files.size() << " sinogram records\n";
    } else if (reconstruct->parsed()) {
      const auto out = tomo::cmd_reconstruct(cfg, data_dir);
      if (!cfg.quiet) {
        if (!std::isnan(out.lrt_composed_error))
          std::cout << "lrt composed error:  " << out.lrt_composed_error << "\n";
        if (!std::isnan(out.trt_composed_error))
          std::cout << "trt composed error:  " << out.trt_composed_error << "\n";
        std::cout << "report: " << cfg.out_dir << "/report.txt\n";
      }
    } else if (decompose->parsed()) {
      const auto files = tomo::cmd_decompose(cfg, field_file);
      if (!cfg.quiet) std::cout << "wrote " << files.size() << " files to " << cfg.out_dir << "\n";
    } else if (verify->parsed()) {
      return tomo::cmd_verify(cfg, std::cout);
    } else if (benchmark->parsed()) {
      return tomo::cmd_benchmark(cfg, std::cout);
    }
  } catch (const tomo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const tomo::ShapeError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const tomo::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const tomo::DecayError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const tomo::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
