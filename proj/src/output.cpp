#include "sgeo/output.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace sgeo {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps line endings stable
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void write_row(std::ofstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << cells[i];
  }
  out << '\n';
}

std::string fmt_u64(std::uint64_t v) { return std::to_string(v); }
std::string fmt_int(int v) { return std::to_string(v); }

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

void write_summary(const fs::path& path, const nlohmann::ordered_json& summary) {
  std::ofstream out = open_out(path);
  out << summary.dump(2) << '\n';
  finish(out, path);
}

std::vector<double> running_min(const std::vector<double>& costs) {
  std::vector<double> out(costs.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < costs.size(); ++i) {
    best = std::min(best, costs[i]);
    out[i] = best;
  }
  return out;
}

}  // namespace

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string iso8601_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_burgers_outputs(const fs::path& dir, const ExperimentConfig& cfg,
                           const BurgersResult& res, const RunStamps& stamps) {
  fs::create_directories(dir / "plots");
  const char* opt_name = cfg.optimizer == OptimizerKind::sgeo ? "sgeo" : "baseline";

  {
    fs::path path = dir / "trajectory.csv";
    std::ofstream out = open_out(path);
    write_row(out, {"t", "index", "x", "u_classical", "u_variational"});
    for (std::size_t k = 0; k < res.steps.size(); ++k) {
      for (std::size_t i = 0; i < res.x.size(); ++i) {
        write_row(out, {fmt_g17(res.steps[k].t), fmt_int(static_cast<int>(i)), fmt_g17(res.x[i]),
                        fmt_g17(res.u_classical[k][i]), fmt_g17(res.u_variational[k][i])});
      }
    }
    finish(out, path);
  }

  {
    fs::path path = dir / "metrics.csv";
    std::ofstream out = open_out(path);
    write_row(out, {"t", "infidelity", "min_cost", "circuit_evals", "lambda"});
    for (const BurgersStepRecord& rec : res.steps) {
      write_row(out, {fmt_g17(rec.t), fmt_g17(rec.infidelity), fmt_g17(rec.min_cost),
                      fmt_u64(rec.circuits), fmt_g17(rec.lam)});
    }
    finish(out, path);
  }

  {
    fs::path path = dir / "plots" / "fig_infidelity.csv";
    std::ofstream out = open_out(path);
    write_row(out, {"t", "infidelity", "optimizer"});
    for (const BurgersStepRecord& rec : res.steps) {
      write_row(out, {fmt_g17(rec.t), fmt_g17(rec.infidelity), opt_name});
    }
    finish(out, path);
  }

  {
    fs::path path = dir / "plots" / "fig_cost_updates.csv";
    std::ofstream out = open_out(path);
    write_row(out, {"t", "update_index", "cost", "running_min", "circuits", "optimizer"});
    for (const BurgersStepRecord& rec : res.steps) {
      std::vector<double> costs;
      std::vector<std::uint64_t> circuits;
      for (const UpdateRecord& u : rec.updates) {
        costs.push_back(u.cost);
        circuits.push_back(u.circuits);
      }
      for (const EvalRecord& e : rec.evals) {
        costs.push_back(e.cost);
        circuits.push_back(e.circuits);
      }
      std::vector<double> mins = running_min(costs);
      for (std::size_t i = 0; i < costs.size(); ++i) {
        write_row(out, {fmt_g17(rec.t), fmt_int(static_cast<int>(i)), fmt_g17(costs[i]),
                        fmt_g17(mins[i]), fmt_u64(circuits[i]), opt_name});
      }
    }
    finish(out, path);
  }

  double max_inf = 0.0;
  for (const BurgersStepRecord& rec : res.steps) max_inf = std::max(max_inf, rec.infidelity);
  nlohmann::ordered_json summary;
  summary["app"] = "burgers";
  summary["version"] = kVersion;
  summary["seed"] = cfg.seed;
  summary["started"] = stamps.started;
  summary["finished"] = stamps.finished;
  summary["resolved_config"] = emit_config(cfg);
  summary["results"] = {{"fit_residual", res.steps.front().min_cost},
                        {"fit_circuits", res.fit_circuits},
                        {"fit_restarts", res.fit_restarts},
                        {"evolution_circuits", res.evolution_circuits},
                        {"lambda_sign_flip", res.lambda_sign_flip},
                        {"final_t", res.steps.back().t},
                        {"final_lambda", res.steps.back().lam},
                        {"final_infidelity", res.steps.back().infidelity},
                        {"max_infidelity", max_inf}};
  write_summary(dir / "summary.json", summary);
}

void write_nlse_outputs(const fs::path& dir, const ExperimentConfig& cfg, const NlseResult& res,
                        const RunStamps& stamps) {
  fs::create_directories(dir / "plots");
  const char* opt_name = cfg.optimizer == OptimizerKind::sgeo ? "sgeo" : "baseline";

  {
    fs::path path = dir / "convergence.csv";
    std::ofstream out = open_out(path);
    write_row(out, {"c_e", "delta_e", "infidelity", "e_p", "e_i", "e_k"});
    for (const NlseConvergenceRecord& rec : res.records) {
      write_row(out, {fmt_u64(rec.circuits), fmt_g17(rec.delta_e), fmt_g17(rec.infidelity),
                      fmt_g17(rec.parts.potential), fmt_g17(rec.parts.interaction),
                      fmt_g17(rec.parts.kinetic)});
    }
    finish(out, path);
  }

  {
    fs::path path = dir / "groundstate.csv";
    std::ofstream out = open_out(path);
    write_row(out, {"x", "psi_gs", "psi_var"});
    std::vector<double> x = nlse_grid(cfg.nlse);
    for (std::size_t i = 0; i < x.size(); ++i) {
      write_row(out, {fmt_g17(x[i]), fmt_g17(res.reference.psi[i]), fmt_g17(res.psi_var[i])});
    }
    finish(out, path);
  }

  {
    fs::path path = dir / "plots" / "fig_energy.csv";
    std::ofstream out = open_out(path);
    write_row(out, {"c_e", "delta_e", "optimizer"});
    for (const NlseConvergenceRecord& rec : res.records) {
      write_row(out, {fmt_u64(rec.circuits), fmt_g17(rec.delta_e), opt_name});
    }
    finish(out, path);
  }

  {
    fs::path path = dir / "plots" / "fig_infidelity.csv";
    std::ofstream out = open_out(path);
    write_row(out, {"c_e", "infidelity", "optimizer"});
    for (const NlseConvergenceRecord& rec : res.records) {
      write_row(out, {fmt_u64(rec.circuits), fmt_g17(rec.infidelity), opt_name});
    }
    finish(out, path);
  }

  nlohmann::ordered_json summary;
  summary["app"] = "nlse";
  summary["version"] = kVersion;
  summary["seed"] = cfg.seed;
  summary["started"] = stamps.started;
  summary["finished"] = stamps.finished;
  summary["resolved_config"] = emit_config(cfg);
  const double egs = res.reference.energy;
  summary["reference"] = {{"energy", egs},
                          {"iterations", res.reference.iterations},
                          {"converged", res.reference.converged}};
  summary["results"] = {{"energy", res.final_energy.total()},
                        {"e_p", res.final_energy.potential},
                        {"e_i", res.final_energy.interaction},
                        {"e_k", res.final_energy.kinetic},
                        {"delta_e", res.delta_e},
                        {"delta_e_relative", res.delta_e / std::abs(egs)},
                        {"infidelity", res.infidelity},
                        {"circuits", res.circuits}};
  write_summary(dir / "summary.json", summary);
}

void write_landscape_csv(const fs::path& dir, const ExperimentConfig& cfg, int param_index,
                         int points, Estimator& est) {
  if (points < 2) throw ConfigError("landscape needs at least 2 points");
  if (param_index < 0 || param_index >= cfg.ansatz.param_count()) {
    throw ConfigError("parameter index out of range");
  }
  fs::create_directories(dir);
  fs::path path = dir / "landscape.csv";
  std::ofstream out = open_out(path);
  constexpr double kPi = 3.14159265358979323846;
  auto lambda_at = [&](int i) {
    return -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(points);
  };

  if (cfg.app == AppKind::burgers) {
    std::vector<double> u0 = burgers_initial_field(cfg.burgers);
    double lam0 = 0.0;
    for (double v : u0) lam0 += v * v;
    lam0 = std::sqrt(lam0);
    std::vector<double> psi0(u0.size());
    for (std::size_t i = 0; i < u0.size(); ++i) psi0[i] = u0[i] / lam0;
    FitResult fit = fit_state(psi0, cfg.ansatz, cfg.seed);
    FluidState state{0.0, lam0, ansatz_state(cfg.ansatz, fit.params), fit.params};
    GSums gs = estimate_g_sums(cfg.burgers, cfg.ansatz, state, fit.params, param_index, est);
    write_row(out, {"lambda", "cost", "bracket"});
    for (int i = 0; i < points; ++i) {
      const double l = lambda_at(i);
      write_row(out, {fmt_g17(l), fmt_g17(step_cost(gs, l)), fmt_g17(bracket_value(gs, l))});
    }
  } else {
    ParamVector p{nlse_initial_params(cfg.nlse, cfg.ansatz, cfg.seed)};
    GammaTerms gt = estimate_gamma_terms(cfg.nlse, cfg.ansatz, p, param_index, est);
    EnergyCurve curve = energy_curve(cfg.nlse, gt);
    write_row(out, {"lambda", "energy", "e_p", "e_i", "e_k"});
    for (int i = 0; i < points; ++i) {
      const double l = lambda_at(i);
      EnergyBreakdown parts = energy_curve_components(cfg.nlse, gt, l);
      write_row(out, {fmt_g17(l), fmt_g17(curve.value(l)), fmt_g17(parts.potential),
                      fmt_g17(parts.interaction), fmt_g17(parts.kinetic)});
    }
  }
  finish(out, path);
}

}  // namespace sgeo
