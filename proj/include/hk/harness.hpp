#pragma once

#include <map>
#include <string>
#include <vector>

#include "hk/model.hpp"
#include "hk/montecarlo.hpp"

namespace hk {

enum class Experiment {
  Envelope,
  VerifyIdentities,
  Quadrature,
  Simulate,
  Sandwich,
  Report,
};

Experiment parse_experiment(const std::string& name);  // throws on unknown
std::string experiment_name(Experiment e);

/// Sectioned key=value configuration (INI-style); arrays are comma lists.
struct ExperimentConfig {
  Experiment experiment = Experiment::Report;
  ModelParams params;
  Domain domain = Domain::half_space(1, 0.0);
  std::vector<double> t_grid, x_grid, y_grid, alpha_grid, a_grid;
  SimConfig sim;
  std::string output_dir = ".";
  bool write_paths = false;
  std::map<std::string, double> tolerances;

  double tol(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
};

/// Parses the config file; `experiment` comes from the CLI, not the file.
/// Throws std::runtime_error with a message on malformed input.
ExperimentConfig load_config(const std::string& path, Experiment experiment);

struct CheckRow {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;  // oracle value or bound the observation is held to
  double ratio = 0.0;  // observed/bound or sigma-distance, per check
  bool pass = true;
};

struct RunReport {
  std::string experiment;
  std::map<std::string, std::string> config_echo;
  std::vector<CheckRow> rows;
  std::map<std::string, double> fitted_constants;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;

  bool pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
};

/// Executes the configured experiment and writes <out>/<experiment>.csv and
/// <out>/<experiment>.json (and paths.bin when requested). Deterministic
/// given the seed; the CSV carries no timestamps and is byte-identical
/// across reruns.
RunReport run(const ExperimentConfig& config);

/// Smallest c >= 1 with observed <= c * shape for all rows; when two_sided,
/// smallest c with 1/c <= observed/shape <= c. Shapes must be positive.
double fit_constant(const std::vector<std::pair<double, double>>& rows,
                    bool two_sided);

}  // namespace hk
