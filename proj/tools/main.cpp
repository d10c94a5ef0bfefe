#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sgeo/output.hpp"
#include "sgeo/validate.hpp"

namespace {

using nlohmann::json;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool exact = false;
  long shots = 0;
  bool circuit_mode = false;
  std::string optimizer;
  int n_qubits = 0;
  int depth = -1;
  int sweeps = 0;
  int max_evals = 0;

  CLI::Option* o_out = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_exact = nullptr;
  CLI::Option* o_shots = nullptr;
  CLI::Option* o_circuit = nullptr;
  CLI::Option* o_optimizer = nullptr;
  CLI::Option* o_n = nullptr;
  CLI::Option* o_depth = nullptr;
  CLI::Option* o_sweeps = nullptr;
  CLI::Option* o_max_evals = nullptr;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file");
  f.o_out = cmd->add_option("--out", f.out_dir, "output directory");
  f.o_seed = cmd->add_option("--seed", f.seed, "master seed");
  f.o_exact = cmd->add_flag("--exact", f.exact, "force the exact estimator");
  f.o_shots = cmd->add_option("--shots", f.shots, "shots per circuit (sampling estimator)");
  f.o_circuit = cmd->add_flag("--circuit-mode", f.circuit_mode,
                              "evaluate overlaps with explicit ancilla-test circuits");
  f.o_optimizer =
      cmd->add_option("--optimizer", f.optimizer, "sgeo or baseline")->check(CLI::IsMember({"sgeo", "baseline"}));
  f.o_n = cmd->add_option("--n", f.n_qubits, "qubit count");
  f.o_depth = cmd->add_option("--depth", f.depth, "ansatz depth");
  f.o_sweeps = cmd->add_option("--sweeps", f.sweeps, "optimizer sweeps");
  f.o_max_evals = cmd->add_option("--max-evals", f.max_evals, "baseline evaluation budget");
}

json overrides_from(const CommonFlags& f) {
  json cli = json::object();
  if (f.o_out->count() > 0) cli["out"] = f.out_dir;
  if (f.o_seed->count() > 0) cli["seed"] = f.seed;
  if (f.o_exact->count() > 0) cli["estimator"]["mode"] = "exact";
  if (f.o_shots->count() > 0) {
    cli["estimator"]["mode"] = "shots";
    cli["estimator"]["shots"] = f.shots;
  }
  if (f.o_circuit->count() > 0) cli["estimator"]["circuit_mode"] = true;
  if (f.o_optimizer->count() > 0) cli["optimizer"]["kind"] = f.optimizer;
  if (f.o_n->count() > 0) cli["ansatz"]["n_qubits"] = f.n_qubits;
  if (f.o_depth->count() > 0) cli["ansatz"]["depth"] = f.depth;
  if (f.o_sweeps->count() > 0) cli["optimizer"]["sweeps"] = f.sweeps;
  if (f.o_max_evals->count() > 0) cli["optimizer"]["max_evals"] = f.max_evals;
  return cli;
}

std::string read_config_file(const std::string& path) {
  if (path.empty()) return "";
  std::ifstream in(path);
  if (!in) throw sgeo::ConfigError("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

sgeo::BurgersRun burgers_run_of(const sgeo::ExperimentConfig& cfg) {
  sgeo::BurgersRun run;
  run.phys = cfg.burgers;
  run.ansatz = cfg.ansatz;
  run.optimizer = cfg.optimizer;
  run.sgeo = cfg.sgeo;
  run.baseline = cfg.baseline;
  run.seed = cfg.seed;
  return run;
}

sgeo::NlseRun nlse_run_of(const sgeo::ExperimentConfig& cfg) {
  sgeo::NlseRun run;
  run.phys = cfg.nlse;
  run.ansatz = cfg.ansatz;
  run.optimizer = cfg.optimizer;
  run.sgeo = cfg.sgeo;
  run.baseline = cfg.baseline;
  run.seed = cfg.seed;
  return run;
}

int cmd_burgers(const CommonFlags& flags, const std::string& preset) {
  json cli = overrides_from(flags);
  if (!preset.empty()) cli["preset"] = preset;
  sgeo::ExperimentConfig cfg =
      sgeo::parse_config(sgeo::AppKind::burgers, read_config_file(flags.config_path), cli);
  sgeo::Estimator est = sgeo::make_estimator(cfg);
  sgeo::RunStamps stamps;
  stamps.started = sgeo::iso8601_now();
  sgeo::BurgersResult res = sgeo::run_burgers(burgers_run_of(cfg), est);
  stamps.finished = sgeo::iso8601_now();
  sgeo::write_burgers_outputs(cfg.out_dir, cfg, res, stamps);
  std::cout << "fluid run complete: " << res.steps.size() - 1 << " steps, final infidelity "
            << sgeo::fmt_g17(res.steps.back().infidelity) << ", circuits "
            << res.evolution_circuits << "\noutputs in " << cfg.out_dir << "\n";
  return 0;
}

int cmd_nlse(const CommonFlags& flags, const CLI::Option* o_g, double g) {
  json cli = overrides_from(flags);
  if (o_g->count() > 0) cli["nlse"]["g"] = g;
  sgeo::ExperimentConfig cfg =
      sgeo::parse_config(sgeo::AppKind::nlse, read_config_file(flags.config_path), cli);
  sgeo::Estimator est = sgeo::make_estimator(cfg);
  sgeo::RunStamps stamps;
  stamps.started = sgeo::iso8601_now();
  sgeo::NlseResult res = sgeo::solve_ground_state(nlse_run_of(cfg), est);
  stamps.finished = sgeo::iso8601_now();
  sgeo::write_nlse_outputs(cfg.out_dir, cfg, res, stamps);
  std::cout << "ground-state run complete: energy " << sgeo::fmt_g17(res.final_energy.total())
            << " (reference " << sgeo::fmt_g17(res.reference.energy) << "), infidelity "
            << sgeo::fmt_g17(res.infidelity) << ", circuits " << res.circuits << "\noutputs in "
            << cfg.out_dir << "\n";
  return 0;
}

int cmd_landscape(const CommonFlags& flags, const std::string& app, int param_index, int points,
                  const std::string& preset, const CLI::Option* o_g, double g) {
  json cli = overrides_from(flags);
  sgeo::AppKind kind;
  if (app == "burgers") {
    kind = sgeo::AppKind::burgers;
    if (!preset.empty()) cli["preset"] = preset;
  } else {
    kind = sgeo::AppKind::nlse;
    if (o_g->count() > 0) cli["nlse"]["g"] = g;
  }
  sgeo::ExperimentConfig cfg = sgeo::parse_config(kind, read_config_file(flags.config_path), cli);
  sgeo::Estimator est = sgeo::make_estimator(cfg);
  sgeo::write_landscape_csv(cfg.out_dir, cfg, param_index, points, est);
  std::cout << "landscape written to " << cfg.out_dir << "/landscape.csv\n";
  return 0;
}

int cmd_validate(bool flip_adder) {
  sgeo::ValidateOptions opts;
  opts.flip_adder = flip_adder;
  sgeo::ValidateReport report = sgeo::run_validate(opts);
  for (const sgeo::ValidateFamily& f : report.families) {
    std::cout << (f.pass ? "PASS" : "FAIL") << "  " << f.name << "  (" << f.detail << ")\n";
  }
  std::cout << (report.all_pass() ? "all properties hold" : "property violations found") << "\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statevector workbench for grid-encoded variational dynamics"};
  app.require_subcommand(1);

  CommonFlags bf, nf, lf;
  std::string b_preset, l_preset, l_app = "burgers";
  double n_g = 0.0, l_g = 0.0;
  int l_param = 0, l_points = 256;
  bool flip_adder = false;

  CLI::App* burgers = app.add_subcommand("burgers", "viscous fluid dynamics benchmark");
  add_common(burgers, bf);
  burgers->add_option("--preset", b_preset, "laminar or turbulent")
      ->check(CLI::IsMember({"laminar", "turbulent"}));

  CLI::App* nlse = app.add_subcommand("nlse", "nonlinear ground-state benchmark");
  add_common(nlse, nf);
  CLI::Option* o_ng = nlse->add_option("--g", n_g, "interaction strength");

  CLI::App* landscape = app.add_subcommand("landscape", "one-parameter cost section CSV");
  add_common(landscape, lf);
  landscape->add_option("--app", l_app, "burgers or nlse")
      ->check(CLI::IsMember({"burgers", "nlse"}));
  landscape->add_option("--preset", l_preset, "laminar or turbulent")
      ->check(CLI::IsMember({"laminar", "turbulent"}));
  CLI::Option* o_lg = landscape->add_option("--g", l_g, "interaction strength");
  landscape->add_option("--param", l_param, "parameter index");
  landscape->add_option("--points", l_points, "samples across [-pi, pi)");

  CLI::App* validate = app.add_subcommand("validate", "cross-module property suite");
  validate->add_flag("--flip-adder", flip_adder,
                     "mutate the shift direction (the suite must then fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (burgers->parsed()) return cmd_burgers(bf, b_preset);
    if (nlse->parsed()) return cmd_nlse(nf, o_ng, n_g);
    if (landscape->parsed()) return cmd_landscape(lf, l_app, l_param, l_points, l_preset, o_lg, l_g);
    if (validate->parsed()) return cmd_validate(flip_adder);
  } catch (const sgeo::ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}
