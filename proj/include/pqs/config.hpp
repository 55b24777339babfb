#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "pqs/engine.hpp"
#include "pqs/models.hpp"

namespace pqs {

struct OutputConfig {
  std::string path = "results";
  std::string format = "csv";  // csv | json
};

/// One experiment: model, partition, initial state, observables, time grid,
/// sampler and evolver settings, plus output destination.
struct ExperimentConfig {
  ModelSpec model;
  std::vector<int> cut;
  InitialPreset initial;
  std::vector<std::string> observables;
  double horizon = 0.0;
  std::vector<double> grid;
  long n_samples = 0;
  std::uint64_t seed = 0;
  SamplerMode mode = SamplerMode::stochastic();
  double tolerance = 1e-10;
  std::string evolver_method = "auto";  // auto | krylov
  bool oracle = false;
  OutputConfig output;
};

/// Strict parse: unknown keys anywhere are rejected with the offending path.
ExperimentConfig parse_config(const nlohmann::json& j);
/// Reads a config file (JSON, // comments allowed).
ExperimentConfig load_config_file(const std::string& path);

/// Canonical echo with every default materialized; reparsing it reproduces
/// the run byte for byte.
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Built-in experiment configurations.
std::vector<std::string> preset_names();
ExperimentConfig preset_config(const std::string& name);
std::string preset_text(const std::string& name);

}  // namespace pqs
