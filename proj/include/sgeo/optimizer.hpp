#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "sgeo/ansatz.hpp"
#include "sgeo/estimator.hpp"

namespace sgeo {

// Uniform scan grid over [-pi, pi): lambda_i = -pi + i * 2pi/points.
struct GridSpec {
  int points = 2048;
};

double grid_point(const GridSpec& grid, int i);

struct GridResult {
  double lambda = 0.0;
  double value = 0.0;
  int index = 0;
};

// Minimum over the grid; ties resolve to the smallest lambda. Throws on NaN.
GridResult grid_minimize(const std::function<double(double)>& f, const GridSpec& grid);

struct ClosedFormResult {
  double lambda = 0.0;
  bool degenerate = false;  // all coefficients zero, lambda defaults to 0
};

// argmin over [-pi, pi) of -(s0 cos(l/2) + spi sin(l/2))^2
ClosedFormResult closed_form_min_residual(double s0, double spi);
// argmin over [-pi, pi) of A + B cos(l) + C sin(l)
ClosedFormResult closed_form_min_harmonic(double A, double B, double C);

// Reconstructed single-parameter cost section handed to the optimizer.
struct CurveSection {
  std::function<double(double)> value;
  // analytic d^order/dl^order, optional (enables Newton polish)
  std::function<double(double, int)> derivative;
  // exact in-domain minimizer candidates, optional (takes precedence)
  std::vector<double> minimizer_candidates;
  std::uint64_t circuits_charged = 0;
};

// Called once per update with the current parameters and the tie group being
// updated (ascending, size 1 when untied); charges its circuits through the
// estimator it is given.
using SectionProvider =
    std::function<CurveSection(const ParamVector&, const std::vector<int>&, Estimator&)>;

struct SgeoConfig {
  int sweeps = 10;
  GridSpec grid;
  bool refine = true;  // polish the grid winner (closed form or Newton)
};

struct UpdateRecord {
  int sweep = 0;
  int param_index = 0;
  double lambda = 0.0;    // accepted value
  double cost = 0.0;      // section value at the accepted lambda
  std::uint64_t circuits = 0;  // cumulative circuits within this run
};

struct OptTrace {
  std::vector<UpdateRecord> updates;
  ParamVector final_params;
  std::string termination;
  std::uint64_t total_circuits = 0;
};

// Sequential grid-based explicit optimization: `sweeps` passes through the
// parameters in ascending order, each update replacing the parameter (or tie
// group) by the minimizer of its reconstructed section. The current value
// always competes as a candidate, so exact-mode coordinate descent is
// monotone; in sampling mode the noisy winner is accepted unconditionally.
OptTrace sgeo_run(const SectionProvider& provider, ParamVector init, const SgeoConfig& cfg,
                  Estimator& est);

struct BaselineConfig {
  double rhobeg = 0.19634954084936207;  // pi/16
  double tol = 1e-10;
  int max_evals = 300;  // cost-function evaluation budget
};

struct EvalRecord {
  int eval_index = 0;
  double cost = 0.0;
  std::uint64_t circuits = 0;  // cumulative circuits within this run
};

struct BaselineTrace {
  std::vector<EvalRecord> evals;
  std::vector<double> final_params;
  double final_cost = 0.0;
  std::string termination;
  std::uint64_t total_circuits = 0;
};

// Derivative-free linear-approximation trust-region baseline (Powell-style
// simplex model: affine interpolation, fixed-length model step, radius
// halving with simplex rescale on failure). Deterministic; parity with any
// particular COBYLA build is a non-goal.
BaselineTrace baseline_run(const std::function<double(const std::vector<double>&)>& cost,
                           std::vector<double> init, const BaselineConfig& cfg, Estimator& est);

}  // namespace sgeo
