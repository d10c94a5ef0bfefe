#pragma once

#include <json.hpp>

#include "sgeo/nlse.hpp"

namespace sgeo {

// Thrown for malformed or inconsistent configuration; the CLI maps it to
// exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class AppKind { burgers, nlse };

// Fully resolved experiment description. Defaults, then preset values, then
// config-file keys, then CLI overrides; preset-dependent fields (ansatz
// depth, sweep and evaluation budgets, regime physics) resolve against the
// final qubit count and regime.
struct ExperimentConfig {
  AppKind app = AppKind::burgers;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::string preset;  // consumed during resolution; kept for the summary

  AnsatzSpec ansatz{3, -1};  // depth -1 = take the preset table value
  EstMode est_mode = EstMode::shots;
  long shots = 50000;
  bool circuit_mode = false;

  OptimizerKind optimizer = OptimizerKind::sgeo;
  SgeoConfig sgeo;
  BaselineConfig baseline;

  BurgersParams burgers;
  NlseParams nlse;
};

// Parses a config-file JSON object (flat sections per module) plus a CLI
// override object of the same shape, applies presets, and resolves every
// field to a concrete value. Unknown keys and type mismatches raise
// ConfigError naming the key.
ExperimentConfig resolve_config(AppKind app, const nlohmann::json& file,
                                const nlohmann::json& cli = nlohmann::json::object());
ExperimentConfig parse_config(AppKind app, const std::string& text,
                              const nlohmann::json& cli = nlohmann::json::object());

// Emits the resolved config; resolve_config(app, emit_config(cfg)) is the
// identity on resolved configs.
nlohmann::ordered_json emit_config(const ExperimentConfig& cfg);

Estimator make_estimator(const ExperimentConfig& cfg);

}  // namespace sgeo
