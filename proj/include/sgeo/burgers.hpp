#pragma once

#include "sgeo/optimizer.hpp"

namespace sgeo {

// Viscous Burgers dynamics on a periodic grid over [-1, 1), explicit Euler in
// time with central differences; the diffusion term uses the halved stencil
// (u_{i+1} - 2u_i + u_{i-1}) / (2 dx^2) on both the variational and the
// classical side, matching the step-operator weights below.
struct BurgersParams {
  int n_qubits = 3;
  double domain_a = -1.0;  // periodic cell [domain_a, domain_b)
  double domain_b = 1.0;
  double nu = 1.0;
  double tau = 0.0;  // 0 resolves to dx/10
  double t_final = 1.0;
  enum class Init { square, sine };
  Init init = Init::square;
};

double burgers_dx(const BurgersParams& bp);
double burgers_tau(const BurgersParams& bp);
std::vector<double> burgers_grid(const BurgersParams& bp);
std::vector<double> burgers_initial_field(const BurgersParams& bp);

// Normalized field representation: u_t = lam * psi, |psi| = 1.
struct FluidState {
  double t = 0.0;
  double lam = 0.0;
  std::vector<double> psi;
  ParamVector params;
};

// One explicit Euler step of the scheme on a raw field (periodic).
std::vector<double> classical_step(const std::vector<double>& u, double nu, double tau, double dx);
// Whole classical trajectory, t = 0 .. steps*tau (steps+1 rows). Throws if
// the field blows up (explicit-scheme instability guard).
std::vector<std::vector<double>> classical_reference(const BurgersParams& bp, int steps);

// Bracket coefficients of the one-parameter step cost
//   C(l) = -[cos(l/2) s0 + sin(l/2) spi]^2,
// assembled from five overlap families per fixing (10 circuits total): the
// plain overlap, the two shift overlaps, and the two shift-after-diagonal
// overlaps against the previous state.
struct GSums {
  double s0 = 0.0, spi = 0.0;
};
GSums estimate_g_sums(const BurgersParams& bp, const AnsatzSpec& spec, const FluidState& prev,
                      const ParamVector& current, int j, Estimator& est);

double bracket_value(const GSums& gs, double lambda);
double step_cost(const GSums& gs, double lambda);

// Direct step cost at fully bound parameters (5 circuits), baseline cost.
double direct_step_cost(const BurgersParams& bp, const AnsatzSpec& spec, const FluidState& prev,
                        const ParamVector& current, Estimator& est, double* bracket_out = nullptr);

// Exact-mode state-preparation fit with seeded restarts.
struct FitResult {
  ParamVector params;
  double residual = 0.0;
  std::uint64_t circuits = 0;
  int restarts = 0;
  int sweeps = 0;
};
FitResult fit_state(const std::vector<double>& psi, const AnsatzSpec& spec, std::uint64_t seed,
                    double tol = 1e-6, int max_sweeps = 400, int max_restarts = 30);

enum class OptimizerKind { sgeo, baseline };

struct BurgersRun {
  BurgersParams phys;
  AnsatzSpec ansatz;
  OptimizerKind optimizer = OptimizerKind::sgeo;
  SgeoConfig sgeo;
  BaselineConfig baseline;
  std::uint64_t seed = 1;  // state-fit restarts (sampling noise seeds live in the estimator)
};

struct BurgersStepRecord {
  double t = 0.0;
  double lam = 0.0;
  double min_cost = 0.0;    // optimized step cost (fit residual at t=0)
  double infidelity = 0.0;  // vs the normalized classical field
  std::uint64_t circuits = 0;  // cumulative evolution circuits after this step
  std::vector<UpdateRecord> updates;  // sgeo history (empty for baseline)
  std::vector<EvalRecord> evals;      // baseline history (empty for sgeo)
};

struct BurgersResult {
  BurgersParams phys;
  AnsatzSpec ansatz;
  std::vector<double> x;
  std::vector<std::vector<double>> u_classical;    // per time index
  std::vector<std::vector<double>> u_variational;  // per time index
  std::vector<BurgersStepRecord> steps;            // index 0 is the t=0 fit
  std::uint64_t fit_circuits = 0;
  int fit_restarts = 0;
  bool lambda_sign_flip = false;  // bracket went negative at some step
  std::uint64_t evolution_circuits = 0;
};

BurgersResult run_burgers(const BurgersRun& run, Estimator& est);

}  // namespace sgeo
