#include "sgeo/burgers.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "sgeo/residual_cost.hpp"
#include "sgeo/state_vector.hpp"

namespace sgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

double l2_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double infidelity_between(const std::vector<double>& a, const std::vector<double>& b) {
  double na = l2_norm(a), nb = l2_norm(b);
  if (na == 0.0 || nb == 0.0) throw std::runtime_error("infidelity of a zero field");
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  dot /= na * nb;
  return 1.0 - dot * dot;
}

}  // namespace

double burgers_dx(const BurgersParams& bp) {
  if (!(bp.domain_b > bp.domain_a)) throw std::invalid_argument("empty spatial domain");
  return (bp.domain_b - bp.domain_a) / static_cast<double>(std::size_t{1} << bp.n_qubits);
}

double burgers_tau(const BurgersParams& bp) {
  return bp.tau > 0.0 ? bp.tau : burgers_dx(bp) / 10.0;
}

std::vector<double> burgers_grid(const BurgersParams& bp) {
  const std::size_t nx = std::size_t{1} << bp.n_qubits;
  const double dx = burgers_dx(bp);
  std::vector<double> x(nx);
  for (std::size_t i = 0; i < nx; ++i) x[i] = bp.domain_a + dx * static_cast<double>(i);
  return x;
}

std::vector<double> burgers_initial_field(const BurgersParams& bp) {
  std::vector<double> x = burgers_grid(bp);
  std::vector<double> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (bp.init == BurgersParams::Init::square) {
      u[i] = std::abs(x[i]) < 0.5 ? 1.0 : 0.0;
    } else {
      u[i] = -std::sin(kPi * x[i]);
    }
  }
  return u;
}

std::vector<double> classical_step(const std::vector<double>& u, double nu, double tau, double dx) {
  const std::size_t nx = u.size();
  if (nx < 2) throw std::invalid_argument("classical_step needs at least two grid points");
  std::vector<double> w(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    const double up = u[(i + 1) % nx];
    const double um = u[(i + nx - 1) % nx];
    const double diff = nu * (up - 2.0 * u[i] + um) / (2.0 * dx * dx);
    const double conv = u[i] * (up - um) / (2.0 * dx);
    w[i] = u[i] + tau * (diff - conv);
  }
  return w;
}

std::vector<std::vector<double>> classical_reference(const BurgersParams& bp, int steps) {
  if (steps < 0) throw std::invalid_argument("negative step count");
  const double dx = burgers_dx(bp);
  const double tau = burgers_tau(bp);
  std::vector<std::vector<double>> traj;
  traj.reserve(static_cast<std::size_t>(steps) + 1);
  traj.push_back(burgers_initial_field(bp));
  for (int k = 0; k < steps; ++k) {
    traj.push_back(classical_step(traj.back(), bp.nu, tau, dx));
    for (double v : traj.back()) {
      if (!std::isfinite(v) || std::abs(v) > 1e6) {
        throw std::runtime_error("classical reference diverged; reduce the time step");
      }
    }
  }
  return traj;
}

namespace {

// Five overlap families that assemble the explicit-step cost. The forward
// shift S+ maps field entry i to i+1, which under the little-endian adder
// convention |k> -> |k+dir> means direction -1.
struct StepWeights {
  double l1 = 0.0, l2 = 0.0, lam = 0.0;
  AdderOp splus, sminus;
  DiagonalOp dpsi;
  Circuit prev_circuit;
};

StepWeights make_weights(const BurgersParams& bp, const AnsatzSpec& spec, const FluidState& prev) {
  const double dx = burgers_dx(bp);
  const double tau = burgers_tau(bp);
  StepWeights w;
  w.lam = prev.lam;
  w.l1 = prev.lam * tau * bp.nu / (2.0 * dx * dx);
  w.l2 = prev.lam * prev.lam * tau / (2.0 * dx);
  w.splus = AdderOp{spec.n_qubits, -1};
  w.sminus = AdderOp{spec.n_qubits, +1};
  w.dpsi = DiagonalOp{prev.psi};
  w.prev_circuit = bind(spec, prev.params);
  return w;
}

double bracket_sum(const StepWeights& w, const Circuit& variant, Estimator& est) {
  const double o1 = overlap_real(w.prev_circuit, {}, variant, est).value;
  const double o2p = overlap_real(w.prev_circuit, {w.splus}, variant, est).value;
  const double o2m = overlap_real(w.prev_circuit, {w.sminus}, variant, est).value;
  const double o3p = overlap_real(w.prev_circuit, {w.dpsi, w.splus}, variant, est).value;
  const double o3m = overlap_real(w.prev_circuit, {w.dpsi, w.sminus}, variant, est).value;
  return (w.lam - 2.0 * w.l1) * o1 + w.l1 * (o2p + o2m) + w.l2 * (o3p - o3m);
}

}  // namespace

GSums estimate_g_sums(const BurgersParams& bp, const AnsatzSpec& spec, const FluidState& prev,
                      const ParamVector& current, int j, Estimator& est) {
  StepWeights w = make_weights(bp, spec, prev);
  GSums gs;
  gs.s0 = bracket_sum(w, bind_fixed(spec, current, {{{j, 0.0}}}), est);
  gs.spi = bracket_sum(w, bind_fixed(spec, current, {{{j, kPi}}}), est);
  return gs;
}

double bracket_value(const GSums& gs, double lambda) {
  return std::cos(lambda / 2.0) * gs.s0 + std::sin(lambda / 2.0) * gs.spi;
}

double step_cost(const GSums& gs, double lambda) {
  const double b = bracket_value(gs, lambda);
  return -b * b;
}

double direct_step_cost(const BurgersParams& bp, const AnsatzSpec& spec, const FluidState& prev,
                        const ParamVector& current, Estimator& est, double* bracket_out) {
  StepWeights w = make_weights(bp, spec, prev);
  const double b = bracket_sum(w, bind(spec, current), est);
  if (bracket_out != nullptr) *bracket_out = b;
  return -b * b;
}

FitResult fit_state(const std::vector<double>& psi, const AnsatzSpec& spec, std::uint64_t seed,
                    double tol, int max_sweeps, int max_restarts) {
  if (psi.size() != (std::size_t{1} << spec.n_qubits)) {
    throw std::invalid_argument("target state size does not match the ansatz register");
  }
  Circuit target;
  target.n_qubits = spec.n_qubits;
  target.ops.push_back(StatePrep{psi});

  Estimator fit_est = Estimator::exact();
  FitResult out;
  out.params = ParamVector(std::vector<double>(static_cast<std::size_t>(spec.param_count()), 0.0));
  out.residual = std::numeric_limits<double>::infinity();

  auto provider = [&](const ParamVector& p, const std::vector<int>& group,
                      Estimator& e) -> CurveSection {
    const int j = group.front();
    AlphaCoeffs al = estimate_alpha(target, spec, p, j, e);
    CurveSection sec;
    sec.value = [al](double l) { return residual_curve(al, l); };
    sec.derivative = [al](double l, int order) { return residual_derivative(al, l, order); };
    ClosedFormResult cf = closed_form_min_residual(al.a0, al.api);
    if (!cf.degenerate) sec.minimizer_candidates.push_back(cf.lambda);
    sec.circuits_charged = 2;
    return sec;
  };

  SgeoConfig cfg;
  cfg.sweeps = 1;
  int sweeps_used = 0;
  for (int restart = 0; restart <= max_restarts; ++restart) {
    std::vector<double> init(static_cast<std::size_t>(spec.param_count()), 0.0);
    if (restart > 0) {
      std::mt19937_64 rng(mix_seed(seed, 0x66697473ULL + static_cast<std::uint64_t>(restart)));
      std::uniform_real_distribution<double> dist(-kPi, kPi);
      for (double& v : init) v = dist(rng);
    }
    ParamVector p{init};
    double prev_cost = direct_residual(target, spec, p, fit_est);
    while (sweeps_used < max_sweeps) {
      OptTrace tr = sgeo_run(provider, p, cfg, fit_est);
      ++sweeps_used;
      p = ParamVector(tr.final_params.values());
      const double cost = tr.updates.back().cost;
      if (cost < tol) {
        out.params = p;
        out.residual = cost;
        out.circuits = fit_est.circuits_used();
        out.restarts = restart;
        out.sweeps = sweeps_used;
        return out;
      }
      if (prev_cost - cost < 1e-15) break;  // stalled on a plateau, try a new start
      prev_cost = cost;
    }
    if (prev_cost < out.residual) {
      out.params = p;
      out.residual = prev_cost;
    }
    if (sweeps_used >= max_sweeps) break;
  }
  throw std::runtime_error("state fit did not reach the requested residual; best " +
                           std::to_string(out.residual));
}

BurgersResult run_burgers(const BurgersRun& run, Estimator& est) {
  const BurgersParams& bp = run.phys;
  if (run.ansatz.n_qubits != bp.n_qubits) {
    throw std::invalid_argument("ansatz register does not match the grid");
  }
  const double tau = burgers_tau(bp);
  const int steps = static_cast<int>(std::llround(bp.t_final / tau));
  if (steps <= 0 || std::abs(steps * tau - bp.t_final) > 1e-9 * std::max(1.0, bp.t_final)) {
    throw std::invalid_argument("final time is not a positive multiple of the time step");
  }

  BurgersResult res;
  res.phys = bp;
  res.ansatz = run.ansatz;
  res.x = burgers_grid(bp);
  res.u_classical = classical_reference(bp, steps);

  std::vector<double> u0 = burgers_initial_field(bp);
  const double lam0 = l2_norm(u0);
  if (lam0 < 1e-12) throw std::runtime_error("initial field has zero norm");
  std::vector<double> psi0(u0.size());
  for (std::size_t i = 0; i < u0.size(); ++i) psi0[i] = u0[i] / lam0;

  FitResult fit = fit_state(psi0, run.ansatz, run.seed);
  res.fit_circuits = fit.circuits;
  res.fit_restarts = fit.restarts;

  FluidState state;
  state.t = 0.0;
  state.lam = lam0;
  state.params = fit.params;
  state.psi = ansatz_state(run.ansatz, fit.params);

  res.u_variational.reserve(static_cast<std::size_t>(steps) + 1);
  std::vector<double> u_var(state.psi.size());
  for (std::size_t i = 0; i < u_var.size(); ++i) u_var[i] = state.lam * state.psi[i];
  res.u_variational.push_back(u_var);

  BurgersStepRecord rec0;
  rec0.t = 0.0;
  rec0.lam = state.lam;
  rec0.min_cost = fit.residual;
  rec0.infidelity = infidelity_between(res.u_classical[0], state.psi);
  rec0.circuits = 0;
  res.steps.push_back(rec0);

  const std::uint64_t circuits_at_start = est.circuits_used();
  for (int k = 1; k <= steps; ++k) {
    BurgersStepRecord rec;
    double lam_next = 0.0;
    double min_cost = 0.0;

    if (run.optimizer == OptimizerKind::sgeo) {
      GSums last;
      int last_j = -1;
      auto provider = [&](const ParamVector& p, const std::vector<int>& group,
                          Estimator& e) -> CurveSection {
        if (group.size() != 1) {
          throw std::runtime_error("tied parameters are not supported by the fluid step cost");
        }
        const int j = group.front();
        GSums gs = estimate_g_sums(bp, run.ansatz, state, p, j, e);
        last = gs;
        last_j = j;
        CurveSection sec;
        sec.value = [gs](double l) { return step_cost(gs, l); };
        ClosedFormResult cf = closed_form_min_residual(gs.s0, gs.spi);
        if (!cf.degenerate) sec.minimizer_candidates.push_back(cf.lambda);
        sec.circuits_charged = 10;
        return sec;
      };
      OptTrace tr = sgeo_run(provider, state.params, run.sgeo, est);
      state.params = ParamVector(tr.final_params.values());
      min_cost = tr.updates.back().cost;
      const double b = bracket_value(last, state.params[last_j]);
      if (b < 0.0) res.lambda_sign_flip = true;
      lam_next = b;
      rec.updates = tr.updates;
    } else {
      auto cost = [&](const std::vector<double>& x) {
        return direct_step_cost(bp, run.ansatz, state, ParamVector{x}, est);
      };
      BaselineTrace tr = baseline_run(cost, state.params.values(), run.baseline, est);
      state.params = ParamVector(tr.final_params);
      min_cost = tr.final_cost;
      double b = 0.0;
      direct_step_cost(bp, run.ansatz, state, state.params, est, &b);
      if (b < 0.0) res.lambda_sign_flip = true;
      lam_next = b;
      rec.evals = tr.evals;
    }

    state.lam = lam_next;
    state.psi = ansatz_state(run.ansatz, state.params);
    state.t = tau * static_cast<double>(k);

    for (std::size_t i = 0; i < u_var.size(); ++i) u_var[i] = state.lam * state.psi[i];
    res.u_variational.push_back(u_var);

    rec.t = state.t;
    rec.lam = state.lam;
    rec.min_cost = min_cost;
    std::vector<double> signed_psi = state.psi;
    if (state.lam < 0.0) {
      for (double& v : signed_psi) v = -v;  // compare realized fields, not raw kets
    }
    rec.infidelity = infidelity_between(res.u_classical[static_cast<std::size_t>(k)], signed_psi);
    rec.circuits = est.circuits_used() - circuits_at_start;
    res.steps.push_back(rec);
  }
  res.evolution_circuits = est.circuits_used() - circuits_at_start;
  return res;
}

}  // namespace sgeo
