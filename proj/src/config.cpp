#include "sgeo/config.hpp"

#include <set>

namespace sgeo {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (allowed.find(it.key()) == allowed.end()) {
      throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

void validate_shape(AppKind app, const json& obj, const std::string& where) {
  check_keys(obj, where,
             {"preset", "seed", "out", "ansatz", "estimator", "optimizer", "burgers", "nlse", "app"});
  if (obj.contains("ansatz")) check_keys(obj["ansatz"], where + ".ansatz", {"n_qubits", "depth"});
  if (obj.contains("estimator")) {
    check_keys(obj["estimator"], where + ".estimator", {"mode", "shots", "circuit_mode"});
  }
  if (obj.contains("optimizer")) {
    check_keys(obj["optimizer"], where + ".optimizer",
               {"kind", "sweeps", "grid_points", "refine", "max_evals", "rhobeg", "tol"});
  }
  if (obj.contains("burgers")) {
    if (app != AppKind::burgers) throw ConfigError("section \"burgers\" is not valid here");
    check_keys(obj["burgers"], where + ".burgers",
               {"domain_a", "domain_b", "nu", "tau", "t_final", "init"});
  }
  if (obj.contains("nlse")) {
    if (app != AppKind::nlse) throw ConfigError("section \"nlse\" is not valid here");
    check_keys(obj["nlse"], where + ".nlse", {"g", "v0", "x0"});
  }
}

// Overlays src onto dst one section deep (sections merge key-by-key).
void merge(json& dst, const json& src) {
  for (auto it = src.begin(); it != src.end(); ++it) {
    if (it.value().is_object() && dst.contains(it.key()) && dst[it.key()].is_object()) {
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
        dst[it.key()][jt.key()] = jt.value();
      }
    } else {
      dst[it.key()] = it.value();
    }
  }
}

template <typename T>
T fetch(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& ex) {
    throw ConfigError("bad value for " + where + "." + key + ": " + ex.what());
  }
}

json burgers_preset(const std::string& name) {
  if (name == "laminar") {
    return json{{"optimizer", {{"sweeps", 5}, {"max_evals", 100}}},
                {"burgers", {{"nu", 1.0}, {"init", "square"}}}};
  }
  if (name == "turbulent") {
    return json{{"optimizer", {{"sweeps", 10}, {"max_evals", 200}}},
                {"burgers", {{"nu", 1e-3}, {"init", "sine"}}}};
  }
  throw ConfigError("unknown preset \"" + name + "\" (expected laminar or turbulent)");
}

int preset_depth(AppKind app, const std::string& preset, int n_qubits, double g) {
  if (app == AppKind::burgers) {
    if (preset == "turbulent") return n_qubits >= 4 ? 4 : 3;
    return n_qubits >= 4 ? 3 : 2;  // laminar and plain defaults share the table
  }
  if (g == 25.0) return n_qubits >= 4 ? 4 : 2;
  if (g == 250.0) return 3;
  return 2;  // g = 750 and anything off the preset grid
}

}  // namespace

ExperimentConfig resolve_config(AppKind app, const json& file, const json& cli) {
  validate_shape(app, file, "config");
  validate_shape(app, cli, "overrides");

  std::string preset;
  if (file.contains("preset")) preset = fetch<std::string>(file, "preset", "config");
  if (cli.contains("preset")) preset = fetch<std::string>(cli, "preset", "overrides");
  if (!preset.empty() && app != AppKind::burgers) {
    throw ConfigError("named presets apply to the fluid app; select the NLSE regime with g");
  }

  for (const json* layer : {&file, &cli}) {
    if (layer->contains("app")) {
      const std::string named = fetch<std::string>(*layer, "app", "config");
      if (named != (app == AppKind::burgers ? "burgers" : "nlse")) {
        throw ConfigError("config is for app \"" + named + "\"");
      }
    }
  }

  json merged = json::object();
  if (!preset.empty()) merge(merged, burgers_preset(preset));
  merge(merged, file);
  merge(merged, cli);
  merged.erase("preset");
  merged.erase("app");

  ExperimentConfig cfg;
  cfg.app = app;
  cfg.preset = preset;
  if (merged.contains("seed")) cfg.seed = fetch<std::uint64_t>(merged, "seed", "config");
  if (merged.contains("out")) cfg.out_dir = fetch<std::string>(merged, "out", "config");

  if (merged.contains("ansatz")) {
    const json& a = merged["ansatz"];
    if (a.contains("n_qubits")) cfg.ansatz.n_qubits = fetch<int>(a, "n_qubits", "ansatz");
    if (a.contains("depth")) cfg.ansatz.depth = fetch<int>(a, "depth", "ansatz");
  }
  if (cfg.ansatz.n_qubits < 1 || cfg.ansatz.n_qubits > 24) {
    throw ConfigError("n_qubits out of range");
  }

  if (merged.contains("estimator")) {
    const json& e = merged["estimator"];
    if (e.contains("mode")) {
      const std::string mode = fetch<std::string>(e, "mode", "estimator");
      if (mode == "exact") {
        cfg.est_mode = EstMode::exact;
      } else if (mode == "shots") {
        cfg.est_mode = EstMode::shots;
      } else {
        throw ConfigError("estimator.mode must be \"exact\" or \"shots\"");
      }
    }
    if (e.contains("shots")) cfg.shots = fetch<long>(e, "shots", "estimator");
    if (e.contains("circuit_mode")) cfg.circuit_mode = fetch<bool>(e, "circuit_mode", "estimator");
  }
  if (cfg.shots < 1) throw ConfigError("estimator.shots must be positive");

  if (merged.contains("optimizer")) {
    const json& o = merged["optimizer"];
    if (o.contains("kind")) {
      const std::string kind = fetch<std::string>(o, "kind", "optimizer");
      if (kind == "sgeo") {
        cfg.optimizer = OptimizerKind::sgeo;
      } else if (kind == "baseline") {
        cfg.optimizer = OptimizerKind::baseline;
      } else {
        throw ConfigError("optimizer.kind must be \"sgeo\" or \"baseline\"");
      }
    }
    if (o.contains("sweeps")) cfg.sgeo.sweeps = fetch<int>(o, "sweeps", "optimizer");
    if (o.contains("grid_points")) cfg.sgeo.grid.points = fetch<int>(o, "grid_points", "optimizer");
    if (o.contains("refine")) cfg.sgeo.refine = fetch<bool>(o, "refine", "optimizer");
    if (o.contains("max_evals")) cfg.baseline.max_evals = fetch<int>(o, "max_evals", "optimizer");
    if (o.contains("rhobeg")) cfg.baseline.rhobeg = fetch<double>(o, "rhobeg", "optimizer");
    if (o.contains("tol")) cfg.baseline.tol = fetch<double>(o, "tol", "optimizer");
  }
  if (cfg.sgeo.sweeps < 1) throw ConfigError("optimizer.sweeps must be positive");
  if (cfg.sgeo.grid.points < 2) throw ConfigError("optimizer.grid_points must be at least 2");
  if (cfg.baseline.max_evals < 1) throw ConfigError("optimizer.max_evals must be positive");
  if (!(cfg.baseline.rhobeg > 0.0)) throw ConfigError("optimizer.rhobeg must be positive");
  if (!(cfg.baseline.tol > 0.0)) throw ConfigError("optimizer.tol must be positive");

  if (app == AppKind::burgers) {
    if (merged.contains("burgers")) {
      const json& b = merged["burgers"];
      if (b.contains("domain_a")) cfg.burgers.domain_a = fetch<double>(b, "domain_a", "burgers");
      if (b.contains("domain_b")) cfg.burgers.domain_b = fetch<double>(b, "domain_b", "burgers");
      if (b.contains("nu")) cfg.burgers.nu = fetch<double>(b, "nu", "burgers");
      if (b.contains("tau")) cfg.burgers.tau = fetch<double>(b, "tau", "burgers");
      if (b.contains("t_final")) cfg.burgers.t_final = fetch<double>(b, "t_final", "burgers");
      if (b.contains("init")) {
        const std::string init = fetch<std::string>(b, "init", "burgers");
        if (init == "square") {
          cfg.burgers.init = BurgersParams::Init::square;
        } else if (init == "sine") {
          cfg.burgers.init = BurgersParams::Init::sine;
        } else {
          throw ConfigError("burgers.init must be \"square\" or \"sine\"");
        }
      }
    }
    cfg.burgers.n_qubits = cfg.ansatz.n_qubits;
    if (!(cfg.burgers.domain_b > cfg.burgers.domain_a)) throw ConfigError("empty spatial domain");
    if (!(cfg.burgers.nu >= 0.0)) throw ConfigError("burgers.nu must be nonnegative");
    if (!(cfg.burgers.t_final > 0.0)) throw ConfigError("burgers.t_final must be positive");
    if (cfg.burgers.tau <= 0.0) cfg.burgers.tau = burgers_dx(cfg.burgers) / 10.0;
  } else {
    if (merged.contains("nlse")) {
      const json& s = merged["nlse"];
      if (s.contains("g")) cfg.nlse.g = fetch<double>(s, "g", "nlse");
      if (s.contains("v0")) cfg.nlse.v0 = fetch<double>(s, "v0", "nlse");
      if (s.contains("x0")) cfg.nlse.x0 = fetch<double>(s, "x0", "nlse");
    }
    cfg.nlse.n_qubits = cfg.ansatz.n_qubits;
    if (!(cfg.nlse.g >= 0.0)) throw ConfigError("nlse.g must be nonnegative");
    if (!(cfg.nlse.v0 > 0.0)) throw ConfigError("nlse.v0 must be positive");
  }

  if (cfg.ansatz.depth < 0) {
    cfg.ansatz.depth = preset_depth(app, preset, cfg.ansatz.n_qubits, cfg.nlse.g);
  }
  if (cfg.ansatz.depth < 0) throw ConfigError("ansatz.depth must be nonnegative");
  return cfg;
}

ExperimentConfig parse_config(AppKind app, const std::string& text, const json& cli) {
  json file;
  try {
    file = text.empty() ? json::object() : json::parse(text);
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
  }
  return resolve_config(app, file, cli);
}

nlohmann::ordered_json emit_config(const ExperimentConfig& cfg) {
  nlohmann::ordered_json out;
  out["app"] = cfg.app == AppKind::burgers ? "burgers" : "nlse";
  out["seed"] = cfg.seed;
  out["out"] = cfg.out_dir;
  out["ansatz"] = {{"n_qubits", cfg.ansatz.n_qubits}, {"depth", cfg.ansatz.depth}};
  out["estimator"] = {{"mode", cfg.est_mode == EstMode::exact ? "exact" : "shots"},
                      {"shots", cfg.shots},
                      {"circuit_mode", cfg.circuit_mode}};
  out["optimizer"] = {{"kind", cfg.optimizer == OptimizerKind::sgeo ? "sgeo" : "baseline"},
                      {"sweeps", cfg.sgeo.sweeps},
                      {"grid_points", cfg.sgeo.grid.points},
                      {"refine", cfg.sgeo.refine},
                      {"max_evals", cfg.baseline.max_evals},
                      {"rhobeg", cfg.baseline.rhobeg},
                      {"tol", cfg.baseline.tol}};
  if (cfg.app == AppKind::burgers) {
    out["burgers"] = {{"domain_a", cfg.burgers.domain_a},
                      {"domain_b", cfg.burgers.domain_b},
                      {"nu", cfg.burgers.nu},
                      {"tau", cfg.burgers.tau},
                      {"t_final", cfg.burgers.t_final},
                      {"init", cfg.burgers.init == BurgersParams::Init::square ? "square" : "sine"}};
  } else {
    out["nlse"] = {{"g", cfg.nlse.g}, {"v0", cfg.nlse.v0}, {"x0", cfg.nlse.x0}};
  }
  return out;
}

Estimator make_estimator(const ExperimentConfig& cfg) {
  Estimator est = cfg.est_mode == EstMode::exact ? Estimator::exact()
                                                 : Estimator::sampling(cfg.shots, cfg.seed);
  est.set_circuit_mode(cfg.circuit_mode);
  return est;
}

}  // namespace sgeo
