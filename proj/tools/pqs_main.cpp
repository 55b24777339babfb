#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <thread>

#include "pqs/errors.hpp"
#include "pqs/runner.hpp"

namespace {

pqs::ExperimentConfig resolve_config(const std::string& arg) {
  if (std::filesystem::exists(arg)) return pqs::load_config_file(arg);
  const auto names = pqs::preset_names();
  if (std::find(names.begin(), names.end(), arg) != names.end()) {
    return pqs::preset_config(arg);
  }
  throw pqs::ConfigError("no such config file or preset: " + arg);
}

int dispatch(const std::function<int()>& body) {
  try {
    return body();
  } catch (const pqs::ResourceLimitError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const pqs::EvolutionError& e) {
    std::cerr << "numerical failure: " << e.what()
              << " (residual " << e.residual() << ")\n";
    return 4;
  } catch (const pqs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbative quantum simulation emulator"};
  app.require_subcommand(1);

  std::string config_arg;
  std::string out_dir = ".";
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_arg, "Config file or preset name")
      ->required();
  run->add_option("--threads", threads, "Worker count (never affects results)");
  run->add_option("--out", out_dir, "Output directory");

  auto* oracle = app.add_subcommand("oracle", "Exact reference only");
  oracle->add_option("config", config_arg, "Config file or preset name")
      ->required();
  oracle->add_option("--out", out_dir, "Output directory");

  auto* bound = app.add_subcommand("bound", "Cost-bound report");
  bound->add_option("config", config_arg, "Config file or preset name")
      ->required();

  std::string preset_name;
  auto* presets = app.add_subcommand("presets", "List built-in configs");
  presets->add_option("name", preset_name, "Print one preset config");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return dispatch([&] {
      const auto cfg = resolve_config(config_arg);
      const auto paths = pqs::run_experiment(cfg, out_dir, threads);
      std::cout << paths.table.string() << "\n"
                << paths.manifest.string() << "\n";
      return 0;
    });
  }
  if (oracle->parsed()) {
    return dispatch([&] {
      const auto cfg = resolve_config(config_arg);
      const auto paths = pqs::run_oracle_only(cfg, out_dir);
      std::cout << paths.table.string() << "\n";
      return 0;
    });
  }
  if (bound->parsed()) {
    return dispatch([&] {
      const auto cfg = resolve_config(config_arg);
      const auto report = pqs::bound_for(cfg);
      nlohmann::json j = {
          {"lower_bound", report.lower_bound},
          {"explicit_cost_rate", report.explicit_cost_rate},
          {"condition1", report.condition1},
          {"per_subsystem_norms", report.per_subsystem_norms}};
      std::cout << j.dump(2) << "\n";
      return 0;
    });
  }
  return dispatch([&] {
    if (preset_name.empty()) {
      for (const auto& name : pqs::preset_names()) std::cout << name << "\n";
    } else {
      std::cout << pqs::preset_text(preset_name) << "\n";
    }
    return 0;
  });
}
