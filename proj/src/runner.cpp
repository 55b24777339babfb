#include "pqs/runner.hpp"

#include <charconv>
#include <chrono>
#include <fstream>

#include "pqs/errors.hpp"

namespace pqs {

namespace {

constexpr const char* kVersion = "0.1.0";

std::unique_ptr<Evolver> make_evolver(const ExperimentConfig& cfg) {
  if (const auto* tfim = std::get_if<TfimSpec>(&cfg.model)) {
    if (tfim->trotter_steps) {
      return std::make_unique<TrotterEvolver>(cfg.horizon, *tfim->trotter_steps);
    }
  }
  EvolverConfig ecfg;
  ecfg.tolerance = cfg.tolerance;
  if (cfg.evolver_method == "krylov") {
    return std::make_unique<KrylovEvolver>(ecfg);
  }
  return std::make_unique<SpectralCacheEvolver>(ecfg);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path().empty()
                                          ? "."
                                          : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file: " + path.string());
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

ExperimentSetup build_experiment(const ExperimentConfig& cfg) {
  ExperimentSetup setup;
  setup.system = partition(cfg.model, cfg.cut);
  setup.initial = build_initial(cfg.model, setup.system, cfg.initial);
  for (const auto& name : cfg.observables) {
    auto group = build_observables(cfg.model, setup.system, name, cfg.initial);
    for (auto& obs : group) setup.observables.push_back(std::move(obs));
  }
  setup.evolver = make_evolver(cfg);
  return setup;
}

namespace {

std::vector<std::vector<double>> oracle_values(const ExperimentConfig& cfg,
                                               const ExperimentSetup& setup) {
  EvolverConfig ecfg;
  ecfg.tolerance = std::min(cfg.tolerance, 1e-10);
  const PauliSum full = build_full(cfg.model);
  const StateVector initial = product_state(setup.system, setup.initial);
  return oracle_series(full, initial, setup.system, setup.observables,
                       cfg.grid, ecfg);
}

void write_manifest(const ExperimentConfig& cfg,
                    const std::filesystem::path& path, double lambda_total,
                    double wall_seconds, int threads) {
  nlohmann::json m;
  m["config"] = config_to_json(cfg);
  m["lambda_total"] = lambda_total;
  m["overhead_horizon"] = std::exp(2.0 * lambda_total * cfg.horizon);
  m["seed"] = cfg.seed;
  m["threads"] = threads;
  m["wall_time_seconds"] = wall_seconds;
  m["versions"] = {{"pqs", kVersion}, {"compiler", __VERSION__}};
  auto out = open_out(path);
  out << m.dump(2) << "\n";
}

}  // namespace

RunPaths run_experiment(const ExperimentConfig& cfg,
                        const std::filesystem::path& out_dir, int threads) {
  const auto t_start = std::chrono::steady_clock::now();
  ExperimentSetup setup = build_experiment(cfg);

  EstimateOptions options;
  options.horizon = cfg.horizon;
  options.grid = cfg.grid;
  options.n_samples = cfg.n_samples;
  options.seed = cfg.seed;
  options.mode = cfg.mode;
  options.threads = threads;
  const std::vector<EstimatorResult> results =
      estimate(setup.system, setup.initial, setup.observables, options,
               *setup.evolver);

  std::vector<std::vector<double>> oracle;
  if (cfg.oracle) oracle = oracle_values(cfg, setup);

  const ExplicitDecomposition decomp = decompose(setup.system);
  const std::size_t n_grid = cfg.grid.size();
  RunPaths paths;
  paths.table = out_dir / (cfg.output.path + "." + cfg.output.format);
  paths.manifest = out_dir / (cfg.output.path + ".manifest.json");

  auto row_result = [&](std::size_t o, std::size_t g) -> const EstimatorResult& {
    return results[o * n_grid + g];
  };

  if (cfg.output.format == "csv") {
    auto out = open_out(paths.table);
    out << "t,observable,mean,stderr,imag_diag,overhead_C,n_samples";
    if (cfg.oracle) out << ",oracle_value,abs_error";
    out << "\n";
    for (std::size_t g = 0; g < n_grid; ++g) {
      for (std::size_t o = 0; o < setup.observables.size(); ++o) {
        const EstimatorResult& r = row_result(o, g);
        out << format_double(r.time) << "," << r.observable << ","
            << format_double(r.mean) << "," << format_double(r.std_error) << ","
            << format_double(r.imag_diagnostic) << ","
            << format_double(r.overhead) << "," << r.n_samples;
        if (cfg.oracle) {
          out << "," << format_double(oracle[o][g]) << ","
              << format_double(std::abs(r.mean - oracle[o][g]));
        }
        out << "\n";
      }
    }
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t g = 0; g < n_grid; ++g) {
      for (std::size_t o = 0; o < setup.observables.size(); ++o) {
        const EstimatorResult& r = row_result(o, g);
        nlohmann::json row = {
            {"t", r.time},
            {"observable", r.observable},
            {"mean", r.mean},
            {"stderr", r.std_error},
            {"imag_diag", r.imag_diagnostic},
            {"overhead_C", r.overhead},
            {"n_samples", r.n_samples}};
        if (cfg.oracle) {
          row["oracle_value"] = oracle[o][g];
          row["abs_error"] = std::abs(r.mean - oracle[o][g]);
        }
        rows.push_back(std::move(row));
      }
    }
    auto out = open_out(paths.table);
    out << rows.dump(2) << "\n";
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  write_manifest(cfg, paths.manifest, decomp.lambda_total, wall, threads);
  return paths;
}

RunPaths run_oracle_only(const ExperimentConfig& cfg,
                         const std::filesystem::path& out_dir) {
  ExperimentSetup setup = build_experiment(cfg);
  const auto values = oracle_values(cfg, setup);
  RunPaths paths;
  paths.table = out_dir / (cfg.output.path + ".oracle.csv");
  auto out = open_out(paths.table);
  out << "t,observable,oracle_value\n";
  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    for (std::size_t o = 0; o < setup.observables.size(); ++o) {
      out << format_double(cfg.grid[g]) << "," << setup.observables[o].name
          << "," << format_double(values[o][g]) << "\n";
    }
  }
  return paths;
}

BoundReport bound_for(const ExperimentConfig& cfg) {
  const PartitionedSystem system = partition(cfg.model, cfg.cut);
  return choi_lower_bound(system.interactions, system.subsystem_sizes);
}

}  // namespace pqs
