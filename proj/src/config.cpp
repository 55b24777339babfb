#include "pqs/config.hpp"

#include <fstream>
#include <set>

#include "pqs/errors.hpp"

namespace pqs {

namespace {

using nlohmann::json;

/// Tracks which keys were consumed so leftovers fail fast.
class StrictObject {
 public:
  StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      throw ConfigError(path_ + " must be an object");
    }
  }

  const json* opt(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& req(const std::string& key) {
    const json* v = opt(key);
    if (!v) throw ConfigError(path_ + " is missing required key '" + key + "'");
    return *v;
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) {
        throw ConfigError("unknown key '" + path_ + "." + item.key() + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  return j.get<double>();
}

long as_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + " must be an integer");
  return j.get<long>();
}

std::vector<double> as_number_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(as_number(v, where));
  return out;
}

std::vector<int> as_int_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(static_cast<int>(as_integer(v, where)));
  return out;
}

ModelSpec parse_model(const json& j) {
  StrictObject obj(j, "model");
  const std::string type = obj.req("type").get<std::string>();
  ModelSpec spec;
  if (type == "tfim") {
    TfimSpec m;
    m.n = static_cast<int>(as_integer(obj.req("n"), "model.n"));
    m.j = as_number(obj.req("j"), "model.j");
    m.h = as_number(obj.req("h"), "model.h");
    if (const json* v = obj.opt("trotter_steps")) {
      m.trotter_steps = static_cast<int>(as_integer(*v, "model.trotter_steps"));
    }
    spec = m;
  } else if (type == "power-law") {
    PowerLawIsingSpec m;
    m.n = static_cast<int>(as_integer(obj.req("n"), "model.n"));
    m.j0 = as_number(obj.req("j0"), "model.j0");
    m.alpha = as_number(obj.req("alpha"), "model.alpha");
    m.h = obj.opt("h") ? as_number(*obj.opt("h"), "model.h")
                       : 2.0 * m.n * m.j0;  // default field, overridable
    spec = m;
  } else if (type == "xx-chain") {
    XXChainSpec m;
    m.n = static_cast<int>(as_integer(obj.req("n"), "model.n"));
    m.j = as_number(obj.req("j"), "model.j");
    m.j_boundary = obj.opt("j_boundary")
                       ? as_number(*obj.opt("j_boundary"), "model.j_boundary")
                       : m.j;
    if (const json* v = obj.opt("onsite")) {
      m.onsite = as_number_list(*v, "model.onsite");
    }
    spec = m;
  } else if (type == "fermi-hubbard") {
    FermiHubbardSpec m;
    m.sites = static_cast<int>(as_integer(obj.req("sites"), "model.sites"));
    m.j = as_number(obj.req("j"), "model.j");
    m.u = as_number(obj.req("u"), "model.u");
    m.n_up = static_cast<int>(as_integer(obj.req("n_up"), "model.n_up"));
    m.n_dn = static_cast<int>(as_integer(obj.req("n_dn"), "model.n_dn"));
    if (const json* v = obj.opt("h_up")) m.h_up = as_number_list(*v, "model.h_up");
    if (const json* v = obj.opt("h_dn")) m.h_dn = as_number_list(*v, "model.h_dn");
    spec = m;
  } else if (type == "multi-cluster") {
    MultiClusterSpec m;
    m.clusters = static_cast<int>(as_integer(obj.req("clusters"), "model.clusters"));
    m.cluster_size =
        static_cast<int>(as_integer(obj.req("cluster_size"), "model.cluster_size"));
    m.j = as_number(obj.req("j"), "model.j");
    m.h = as_number(obj.req("h"), "model.h");
    m.boundary_couplings =
        as_number_list(obj.req("boundary_couplings"), "model.boundary_couplings");
    spec = m;
  } else {
    throw ConfigError("unknown model.type '" + type + "'");
  }
  obj.finish();
  return spec;
}

InitialPreset parse_initial(const json& j) {
  StrictObject obj(j, "initial");
  const std::string preset = obj.req("preset").get<std::string>();
  InitialPreset out;
  if (preset == "all-zero") {
    out = AllZeroInit{};
  } else if (preset == "flip-sites") {
    FlipSitesInit flips;
    flips.sites = as_int_list(obj.req("sites"), "initial.sites");
    out = flips;
  } else if (preset == "hubbard-ground") {
    out = HubbardGroundInit{};
  } else {
    throw ConfigError("unknown initial.preset '" + preset + "'");
  }
  obj.finish();
  return out;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  StrictObject obj(j, "config");
  ExperimentConfig cfg;
  cfg.model = parse_model(obj.req("model"));
  cfg.cut = as_int_list(obj.req("cut"), "cut");
  cfg.initial = parse_initial(obj.req("initial"));

  const json& obs = obj.req("observables");
  if (!obs.is_array() || obs.empty()) {
    throw ConfigError("observables must be a non-empty array of names");
  }
  for (const auto& o : obs) cfg.observables.push_back(o.get<std::string>());

  {
    StrictObject time(obj.req("time"), "time");
    cfg.horizon = as_number(time.req("horizon"), "time.horizon");
    if (cfg.horizon <= 0) throw ConfigError("time.horizon must be positive");
    const json* points = time.opt("grid_points");
    const json* grid = time.opt("grid");
    if ((points == nullptr) == (grid == nullptr)) {
      throw ConfigError("time needs exactly one of grid_points or grid");
    }
    if (points) {
      const long n = as_integer(*points, "time.grid_points");
      if (n < 1) throw ConfigError("time.grid_points must be positive");
      for (long k = 1; k <= n; ++k) cfg.grid.push_back(cfg.horizon * k / n);
    } else {
      cfg.grid = as_number_list(*grid, "time.grid");
      for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
        const bool ordered = i == 0 || cfg.grid[i] > cfg.grid[i - 1];
        if (!ordered || cfg.grid[i] < 0 || cfg.grid[i] > cfg.horizon) {
          throw ConfigError("time.grid must ascend within [0, horizon]");
        }
      }
    }
    time.finish();
  }
  {
    StrictObject sampler(obj.req("sampler"), "sampler");
    cfg.n_samples = as_integer(sampler.req("n_samples"), "sampler.n_samples");
    if (cfg.n_samples < 2) throw ConfigError("sampler.n_samples must be >= 2");
    cfg.seed =
        static_cast<std::uint64_t>(as_integer(sampler.req("seed"), "sampler.seed"));
    const std::string mode = sampler.req("mode").get<std::string>();
    if (mode == "stochastic") {
      std::optional<long> cap;
      if (const json* v = sampler.opt("max_jumps")) {
        cap = as_integer(*v, "sampler.max_jumps");
        if (*cap < 0) throw ConfigError("sampler.max_jumps must be >= 0");
      }
      cfg.mode = SamplerMode::stochastic(cap);
    } else if (mode == "dyson") {
      const long order = as_integer(sampler.req("dyson_order"), "sampler.dyson_order");
      if (order < 0) throw ConfigError("sampler.dyson_order must be >= 0");
      cfg.mode = SamplerMode::dyson(static_cast<int>(order));
    } else {
      throw ConfigError("sampler.mode must be 'stochastic' or 'dyson'");
    }
    sampler.finish();
  }
  if (const json* ev = obj.opt("evolver")) {
    StrictObject evolver(*ev, "evolver");
    if (const json* v = evolver.opt("tolerance")) {
      cfg.tolerance = as_number(*v, "evolver.tolerance");
      if (cfg.tolerance <= 0) throw ConfigError("evolver.tolerance must be > 0");
    }
    if (const json* v = evolver.opt("method")) {
      cfg.evolver_method = v->get<std::string>();
      if (cfg.evolver_method != "auto" && cfg.evolver_method != "krylov") {
        throw ConfigError("evolver.method must be 'auto' or 'krylov'");
      }
    }
    evolver.finish();
  }
  if (const json* v = obj.opt("oracle")) {
    if (!v->is_boolean()) throw ConfigError("oracle must be a boolean");
    cfg.oracle = v->get<bool>();
  }
  if (const json* out = obj.opt("output")) {
    StrictObject output(*out, "output");
    if (const json* v = output.opt("path")) cfg.output.path = v->get<std::string>();
    if (const json* v = output.opt("format")) {
      cfg.output.format = v->get<std::string>();
      if (cfg.output.format != "csv" && cfg.output.format != "json") {
        throw ConfigError("output.format must be 'csv' or 'json'");
      }
    }
    output.finish();
  }
  obj.finish();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
  return parse_config(j);
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  json j;
  json model;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TfimSpec>) {
          model = {{"type", "tfim"}, {"n", m.n}, {"j", m.j}, {"h", m.h}};
          if (m.trotter_steps) model["trotter_steps"] = *m.trotter_steps;
        } else if constexpr (std::is_same_v<T, PowerLawIsingSpec>) {
          model = {{"type", "power-law"},
                   {"n", m.n},
                   {"j0", m.j0},
                   {"alpha", m.alpha},
                   {"h", m.h}};
        } else if constexpr (std::is_same_v<T, XXChainSpec>) {
          model = {{"type", "xx-chain"},
                   {"n", m.n},
                   {"j", m.j},
                   {"j_boundary", m.j_boundary}};
          if (!m.onsite.empty()) model["onsite"] = m.onsite;
        } else if constexpr (std::is_same_v<T, FermiHubbardSpec>) {
          model = {{"type", "fermi-hubbard"}, {"sites", m.sites}, {"j", m.j},
                   {"u", m.u},                {"n_up", m.n_up},   {"n_dn", m.n_dn}};
          if (!m.h_up.empty()) model["h_up"] = m.h_up;
          if (!m.h_dn.empty()) model["h_dn"] = m.h_dn;
        } else if constexpr (std::is_same_v<T, MultiClusterSpec>) {
          model = {{"type", "multi-cluster"},
                   {"clusters", m.clusters},
                   {"cluster_size", m.cluster_size},
                   {"j", m.j},
                   {"h", m.h},
                   {"boundary_couplings", m.boundary_couplings}};
        }
      },
      cfg.model);
  j["model"] = model;
  j["cut"] = cfg.cut;
  json initial;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, AllZeroInit>) {
          initial = {{"preset", "all-zero"}};
        } else if constexpr (std::is_same_v<T, FlipSitesInit>) {
          initial = {{"preset", "flip-sites"}, {"sites", p.sites}};
        } else {
          initial = {{"preset", "hubbard-ground"}};
        }
      },
      cfg.initial);
  j["initial"] = initial;
  j["observables"] = cfg.observables;
  j["time"] = {{"horizon", cfg.horizon}, {"grid", cfg.grid}};
  json sampler = {{"n_samples", cfg.n_samples},
                  {"seed", cfg.seed},
                  {"mode", cfg.mode.kind == SamplerMode::Stochastic
                               ? "stochastic"
                               : "dyson"}};
  if (cfg.mode.kind == SamplerMode::Stochastic && cfg.mode.max_jumps) {
    sampler["max_jumps"] = *cfg.mode.max_jumps;
  }
  if (cfg.mode.kind == SamplerMode::Dyson) {
    sampler["dyson_order"] = cfg.mode.dyson_order;
  }
  j["sampler"] = sampler;
  j["evolver"] = {{"tolerance", cfg.tolerance}, {"method", cfg.evolver_method}};
  j["oracle"] = cfg.oracle;
  j["output"] = {{"path", cfg.output.path}, {"format", cfg.output.format}};
  return j;
}

}  // namespace pqs
