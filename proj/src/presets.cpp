#include <map>

#include "pqs/config.hpp"
#include "pqs/errors.hpp"

namespace pqs {

namespace {

// Boundary couplings for the multi-cluster preset were drawn once, uniformly
// in [0, J/2], and are pinned here for reproducibility.
const std::map<std::string, const char*>& preset_table() {
  static const std::map<std::string, const char*> presets = {
      {"dqpt", R"({
  "model": {"type": "tfim", "n": 8, "j": 1.0, "h": 1.5, "trotter_steps": 4},
  "cut": [4, 4],
  "initial": {"preset": "all-zero"},
  "observables": ["m_z", "loschmidt", "identity"],
  "time": {"horizon": 1.0, "grid_points": 4},
  "sampler": {"n_samples": 10000, "seed": 11, "mode": "stochastic"},
  "evolver": {"tolerance": 1e-10},
  "oracle": true,
  "output": {"path": "dqpt", "format": "csv"}
})"},
      {"qw16", R"({
  "model": {"type": "xx-chain", "n": 16, "j": 0.5, "j_boundary": 0.4},
  "cut": [8, 8],
  "initial": {"preset": "flip-sites", "sites": [8]},
  "observables": ["density", "identity"],
  "time": {"horizon": 1.25, "grid_points": 4},
  "sampler": {"n_samples": 500000, "seed": 5, "mode": "stochastic"},
  "evolver": {"tolerance": 1e-10},
  "oracle": true,
  "output": {"path": "qw16", "format": "csv"}
})"},
      {"hubbard-spin-cut", R"({
  "model": {"type": "fermi-hubbard", "sites": 4, "j": 0.5, "u": 0.5,
            "n_up": 1, "n_dn": 1},
  "cut": [4, 4],
  "initial": {"preset": "hubbard-ground"},
  "observables": ["charge_density", "spin_density", "kappa", "identity"],
  "time": {"horizon": 1.0, "grid_points": 4},
  "sampler": {"n_samples": 100000, "seed": 3, "mode": "stochastic"},
  "evolver": {"tolerance": 1e-10},
  "oracle": true,
  "output": {"path": "hubbard", "format": "csv"}
})"},
      {"powerlaw-clusters", R"({
  "model": {"type": "power-law", "n": 16, "j0": 1.0, "alpha": 1.0, "h": 32.0},
  "cut": [8, 8],
  "initial": {"preset": "flip-sites", "sites": [8]},
  "observables": ["density", "identity"],
  "time": {"horizon": 1.0, "grid_points": 4},
  "sampler": {"n_samples": 200000, "seed": 7, "mode": "stochastic"},
  "evolver": {"tolerance": 1e-10},
  "oracle": true,
  "output": {"path": "powerlaw", "format": "csv"}
})"},
      {"multicluster", R"({
  "model": {"type": "multi-cluster", "clusters": 3, "cluster_size": 6,
            "j": 1.0, "h": 1.0,
            "boundary_couplings": [0.19122687303870784, 0.4281069214443132]},
  "cut": [6, 6, 6],
  "initial": {"preset": "all-zero"},
  "observables": ["m_z", "c_nn", "loschmidt", "identity"],
  "time": {"horizon": 1.0, "grid_points": 4},
  "sampler": {"n_samples": 500000, "seed": 13, "mode": "stochastic"},
  "evolver": {"tolerance": 1e-10},
  "oracle": true,
  "output": {"path": "multicluster", "format": "csv"}
})"},
  };
  return presets;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : preset_table()) names.push_back(name);
  return names;
}

std::string preset_text(const std::string& name) {
  const auto it = preset_table().find(name);
  if (it == preset_table().end()) {
    throw ConfigError("unknown preset: " + name);
  }
  return it->second;
}

ExperimentConfig preset_config(const std::string& name) {
  return parse_config(nlohmann::json::parse(preset_text(name)));
}

}  // namespace pqs
