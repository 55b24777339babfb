#pragma once

#include <filesystem>
#include <memory>

#include "pqs/config.hpp"
#include "pqs/verify.hpp"

namespace pqs {

/// Everything an experiment needs, assembled from its configuration.
struct ExperimentSetup {
  PartitionedSystem system;
  std::vector<StateVector> initial;
  std::vector<ObservableSum> observables;
  std::unique_ptr<Evolver> evolver;
};

ExperimentSetup build_experiment(const ExperimentConfig& config);

struct RunPaths {
  std::filesystem::path table;
  std::filesystem::path manifest;
};

/// Full run: sampling, optional oracle columns, table plus manifest.
/// Deterministic for a fixed (config, seed) at any thread count.
RunPaths run_experiment(const ExperimentConfig& config,
                        const std::filesystem::path& out_dir, int threads);

/// Oracle-only evaluation (columns t, observable, oracle_value).
RunPaths run_oracle_only(const ExperimentConfig& config,
                         const std::filesystem::path& out_dir);

/// Cost-bound report for the config's interaction.
BoundReport bound_for(const ExperimentConfig& config);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace pqs
