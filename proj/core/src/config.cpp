#include "tomo/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace tomo {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("config: bad boolean for " + key + ": " + v);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n != 2 && n != 3) throw ConfigError("config: n must be 2 or 3");
  if (m < 0 || m > 3) throw ConfigError("config: m must be in 0..3");
  if (grid_n < 8) throw ConfigError("config: grid_n must be >= 8");
  if (!(half_extent > 0)) throw ConfigError("config: half_extent must be positive");
  if (directions < 0 || p_count < 0) throw ConfigError("config: negative sample counts");
  if (phantom_kind != "gaussian_poly" && phantom_kind != "random_band")
    throw ConfigError("config: phantom_kind must be gaussian_poly or random_band");
  if (pipeline != "lrt" && pipeline != "trt" && pipeline != "both")
    throw ConfigError("config: pipeline must be lrt, trt or both");
  if (n != 2 && (pipeline == "lrt" || pipeline == "trt" || pipeline == "both"))
    if (n != 2) throw ConfigError("config: reconstruction pipelines require n = 2");
  if (noise < 0) throw ConfigError("config: noise must be >= 0");
  if (!(window_cutoff > 0.0 && window_cutoff <= 1.0))
    throw ConfigError("config: window_cutoff must lie in (0, 1]");
  if (!(output_cutoff > 0.0 && output_cutoff <= 1.0))
    throw ConfigError("config: output_cutoff must lie in (0, 1]");
  if (interp_order != 1 && interp_order != 3)
    throw ConfigError("config: interp_order must be 1 or 3");
  if (!(quad_step_factor > 0.0 && quad_step_factor <= 1.0))
    throw ConfigError("config: quad_step_factor must lie in (0, 1]");
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "n") cfg.n = std::stoi(value);
      else if (key == "m") cfg.m = std::stoi(value);
      else if (key == "grid_n") cfg.grid_n = std::stoi(value);
      else if (key == "half_extent") cfg.half_extent = std::stod(value);
      else if (key == "directions") cfg.directions = std::stoi(value);
      else if (key == "p_count") cfg.p_count = std::stoi(value);
      else if (key == "phantom_kind") cfg.phantom_kind = value;
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "pipeline") cfg.pipeline = value;
      else if (key == "noise") cfg.noise = std::stod(value);
      else if (key == "window_cutoff") cfg.window_cutoff = std::stod(value);
      else if (key == "output_cutoff") cfg.output_cutoff = std::stod(value);
      else if (key == "interp_order") cfg.interp_order = std::stoi(value);
      else if (key == "quad_step_factor") cfg.quad_step_factor = std::stod(value);
      else if (key == "boundary_tol") cfg.boundary_tol = std::stod(value);
      else if (key == "out_dir") cfg.out_dir = value;
      else if (key == "pgm") cfg.pgm = parse_bool(value, key);
      else if (key == "quiet") cfg.quiet = parse_bool(value, key);
      else if (key == "tol_scale") cfg.tol_scale = std::stod(value);
      else if (key == "verify_grid_n") cfg.verify_grid_n = std::stoi(value);
      else if (key == "verify_radon_n") cfg.verify_radon_n = std::stoi(value);
      else if (key == "verify_3d") cfg.verify_3d = parse_bool(value, key);
      else if (key == "verify_grid_n3") cfg.verify_grid_n3 = std::stoi(value);
      else throw ConfigError("config: unknown key " + key);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("config: bad value for " + key + ": " + value);
    }
  }
  cfg.validate();
  return cfg;
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  os << "n = " << n << "\n"
     << "m = " << m << "\n"
     << "grid_n = " << grid_n << "\n"
     << "half_extent = " << half_extent << "\n"
     << "directions = " << effective_directions() << "\n"
     << "p_count = " << p_count << "\n"
     << "phantom_kind = " << phantom_kind << "\n"
     << "seed = " << seed << "\n"
     << "pipeline = " << pipeline << "\n"
     << "noise = " << noise << "\n"
     << "window_cutoff = " << window_cutoff << "\n"
     << "output_cutoff = " << output_cutoff << "\n"
     << "interp_order = " << interp_order << "\n"
     << "quad_step_factor = " << quad_step_factor << "\n"
     << "boundary_tol = " << boundary_tol << "\n"
     << "out_dir = " << out_dir << "\n"
     << "pgm = " << (pgm ? 1 : 0) << "\n"
     << "quiet = " << (quiet ? 1 : 0) << "\n"
     << "tol_scale = " << tol_scale << "\n"
     << "verify_grid_n = " << verify_grid_n << "\n"
     << "verify_radon_n = " << verify_radon_n << "\n"
     << "verify_3d = " << (verify_3d ? 1 : 0) << "\n"
     << "verify_grid_n3 = " << verify_grid_n3 << "\n";
  return os.str();
}

}  // namespace tomo
