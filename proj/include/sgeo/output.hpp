#pragma once

#include <filesystem>

#include "sgeo/config.hpp"

namespace sgeo {

inline constexpr const char* kVersion = "0.1.0";

// 17-significant-digit decimal form, enough to round-trip a double.
std::string fmt_g17(double v);

struct RunStamps {
  std::string started;
  std::string finished;
};
std::string iso8601_now();

// trajectory.csv, metrics.csv, plots/fig_infidelity.csv,
// plots/fig_cost_updates.csv, summary.json
void write_burgers_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                           const BurgersResult& res, const RunStamps& stamps);

// convergence.csv, groundstate.csv, plots/fig_energy.csv,
// plots/fig_infidelity.csv, summary.json
void write_nlse_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                        const NlseResult& res, const RunStamps& stamps);

// landscape.csv: one-parameter cost section for the configured app.
void write_landscape_csv(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                         int param_index, int points, Estimator& est);

}  // namespace sgeo
