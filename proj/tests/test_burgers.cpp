#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sgeo/burgers.hpp"

using namespace sgeo;

namespace {

constexpr double kPi = 3.14159265358979323846;

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> random_field(std::mt19937_64& rng, std::size_t n, double amp) {
  std::uniform_real_distribution<double> dist(-amp, amp);
  std::vector<double> u(n);
  for (double& x : u) x = dist(rng);
  return u;
}

}  // namespace

TEST_CASE("grid, step size, and initial profiles") {
  BurgersParams bp;
  CHECK(burgers_dx(bp) == doctest::Approx(0.25));
  CHECK(burgers_tau(bp) == doctest::Approx(0.025));
  bp.tau = 0.01;
  CHECK(burgers_tau(bp) == doctest::Approx(0.01));
  bp.tau = 0.0;

  std::vector<double> x = burgers_grid(bp);
  REQUIRE(x.size() == 8);
  CHECK(x.front() == doctest::Approx(-1.0));
  CHECK(x.back() == doctest::Approx(0.75));

  std::vector<double> square = burgers_initial_field(bp);
  for (std::size_t i = 0; i < square.size(); ++i) {
    CHECK(square[i] == ((i == 3 || i == 4 || i == 5) ? 1.0 : 0.0));
  }
  CHECK(norm2(square) == doctest::Approx(std::sqrt(3.0)));

  bp.init = BurgersParams::Init::sine;
  std::vector<double> sine = burgers_initial_field(bp);
  double sum = 0.0;
  for (std::size_t i = 0; i < sine.size(); ++i) {
    sum += sine[i];
    CHECK(sine[i] == doctest::Approx(-std::sin(kPi * x[i])));
  }
  CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("explicit update matches the independent stencil and the dense operator") {
  std::mt19937_64 rng(91);
  const double dx = 0.25, tau = 0.025, nu = 0.7;
  std::vector<double> u = random_field(rng, 8, 1.0);

  std::vector<double> stepped = classical_step(u, nu, tau, dx);
  std::vector<double> expected = oracle::euler_step(u, nu, tau, dx);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(stepped[i] == doctest::Approx(expected[i]));

  // route the same update through the normalized-field operator
  const double lam = norm2(u);
  std::vector<double> psi(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) psi[i] = u[i] / lam;
  oracle::RMat l = oracle::fluid_step_matrix(psi, lam, nu, tau, dx);
  oracle::RVec pv(static_cast<Eigen::Index>(psi.size()));
  for (std::size_t i = 0; i < psi.size(); ++i) pv(static_cast<Eigen::Index>(i)) = psi[i];
  oracle::RVec w = l * pv;
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(std::abs(w(static_cast<Eigen::Index>(i)) - stepped[i]) < 1e-12);
  }

  std::vector<double> flat(8, 0.6);
  std::vector<double> still = classical_step(flat, nu, tau, dx);
  for (double v : still) CHECK(v == doctest::Approx(0.6));
}

TEST_CASE("the diffusion part conserves mass on the periodic grid") {
  std::mt19937_64 rng(92);
  std::vector<double> u = random_field(rng, 8, 2.0);
  const double dx = 0.25, tau = 0.025, nu = 1.3;
  double before = 0.0, after = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    before += u[i];
    const double up = u[(i + 1) % 8], um = u[(i + 7) % 8];
    after += u[i] + tau * nu * (up - 2.0 * u[i] + um) / (2.0 * dx * dx);
  }
  CHECK(std::abs(after - before) < 1e-10);
}

TEST_CASE("diffusion-dominated runs decay monotonically and unstable ones are caught") {
  BurgersParams bp;
  bp.init = BurgersParams::Init::sine;
  std::vector<std::vector<double>> traj = classical_reference(bp, 4);  // t up to 0.1
  REQUIRE(traj.size() == 5);
  double prev = 1e300;
  for (const std::vector<double>& u : traj) {
    double sup = 0.0;
    for (double v : u) sup = std::max(sup, std::abs(v));
    CHECK(sup <= prev + 1e-12);
    prev = sup;
  }

  BurgersParams wild = bp;
  wild.nu = 500.0;  // far past the explicit stability limit
  CHECK_THROWS(classical_reference(wild, 400));
  CHECK_THROWS(classical_reference(bp, -1));
}

TEST_CASE("bracket sections match the dense step operator") {
  std::mt19937_64 rng(93);
  BurgersParams bp;
  bp.n_qubits = 2;
  bp.nu = 0.8;
  const double dx = burgers_dx(bp), tau = burgers_tau(bp);

  AnsatzSpec spec{2, 2};
  ParamVector prev_p{oracle::random_angles(rng, 6)};
  FluidState prev;
  prev.lam = 1.4;
  prev.params = prev_p;
  prev.psi = ansatz_state(spec, prev_p);

  oracle::RMat l = oracle::fluid_step_matrix(prev.psi, prev.lam, bp.nu, tau, dx);
  oracle::RVec pv(4);
  for (int i = 0; i < 4; ++i) pv(i) = prev.psi[static_cast<std::size_t>(i)];
  const oracle::RVec target = l * pv;  // updated raw field

  ParamVector cur{oracle::random_angles(rng, 6)};
  Estimator est = Estimator::exact();
  std::uniform_real_distribution<double> lam(-3.1, 3.1);
  for (int j : {0, 3, 5}) {
    const std::uint64_t before = est.circuits_used();
    GSums gs = estimate_g_sums(bp, spec, prev, cur, j, est);
    CHECK(est.circuits_used() - before == 10);

    for (int rep = 0; rep < 16; ++rep) {
      const double lj = lam(rng);
      ParamVector moved{cur.values()};
      moved.set(j, lj);

      double bracket = 0.0;
      const double direct = direct_step_cost(bp, spec, prev, moved, est, &bracket);
      CHECK(std::abs(step_cost(gs, lj) - direct) < 1e-9);
      CHECK(std::abs(bracket_value(gs, lj) - bracket) < 1e-10);

      std::vector<double> moved_angles = moved.values();
      oracle::RVec psi_l = oracle::ansatz_state_vec(2, 2, moved_angles);
      CHECK(std::abs(bracket_value(gs, lj) - target.dot(psi_l)) < 1e-9);
    }
  }
}

TEST_CASE("step cost algebra") {
  GSums gs{1.2, -0.8};
  std::mt19937_64 rng(94);
  std::uniform_real_distribution<double> lam(-kPi, kPi);
  for (int rep = 0; rep < 20; ++rep) {
    const double l = lam(rng);
    const double b = bracket_value(gs, l);
    CHECK(step_cost(gs, l) == doctest::Approx(-b * b));
  }

  GSums zero{0.0, 0.0};
  CHECK(step_cost(zero, 0.7) == 0.0);

  GSums pure{1.0, 0.0};
  CHECK(step_cost(pure, 0.0) == doctest::Approx(-1.0));
  const double half = std::cos(0.4 / 2);
  CHECK(step_cost(pure, 0.4) == doctest::Approx(-half * half));
}

TEST_CASE("state fitting reaches the requested residual deterministically") {
  BurgersParams bp;
  std::vector<double> u0 = burgers_initial_field(bp);
  const double lam0 = norm2(u0);
  std::vector<double> psi0(u0.size());
  for (std::size_t i = 0; i < u0.size(); ++i) psi0[i] = u0[i] / lam0;

  AnsatzSpec spec{3, 2};
  FitResult fit = fit_state(psi0, spec, 1);
  CHECK(fit.residual < 1e-6);
  std::vector<double> fitted = ansatz_state(spec, fit.params);
  double dot = 0.0;
  for (std::size_t i = 0; i < fitted.size(); ++i) dot += fitted[i] * psi0[i];
  CHECK(dot * dot > 1.0 - 1e-6);

  FitResult again = fit_state(psi0, spec, 1);
  CHECK(again.params.values() == fit.params.values());

  CHECK_THROWS(fit_state(std::vector<double>(4, 0.5), spec, 1));  // wrong register size
}

TEST_CASE("the first evolution step reproduces the classical update norm") {
  BurgersRun run;
  run.phys.t_final = burgers_tau(run.phys);  // single step
  run.ansatz = AnsatzSpec{3, 2};
  run.sgeo.sweeps = 12;
  run.seed = 1;
  Estimator est = Estimator::exact();
  BurgersResult res = run_burgers(run, est);

  REQUIRE(res.steps.size() == 2);
  std::vector<double> u0 = burgers_initial_field(run.phys);
  std::vector<double> u1 =
      oracle::euler_step(u0, run.phys.nu, burgers_tau(run.phys), burgers_dx(run.phys));
  // the fitted t=0 state carries ~sqrt(fit cost) amplitude error, which the
  // optimal norm inherits, so the bound is 1e-3 rather than the fit tolerance
  CHECK(std::abs(res.steps[1].lam - norm2(u1)) < 1e-3);
  CHECK_FALSE(res.lambda_sign_flip);
  CHECK(res.steps[0].circuits == 0);
  CHECK(res.steps[0].min_cost < 1e-6);  // the fit residual
}

TEST_CASE("an over-parameterized register tracks the classical trajectory exactly") {
  BurgersRun run;
  run.phys.n_qubits = 2;
  run.phys.init = BurgersParams::Init::sine;
  run.phys.t_final = 3.0 * burgers_tau(run.phys);
  run.ansatz = AnsatzSpec{2, 3};
  run.sgeo.sweeps = 15;
  Estimator est = Estimator::exact();
  BurgersResult res = run_burgers(run, est);

  REQUIRE(res.u_variational.size() == 4);
  for (std::size_t k = 0; k < res.u_variational.size(); ++k) {
    for (std::size_t i = 0; i < res.u_variational[k].size(); ++i) {
      CHECK(std::abs(res.u_variational[k][i] - res.u_classical[k][i]) < 1e-6);
    }
    CHECK(res.steps[k].infidelity >= -1e-12);  // rounding can land a hair below zero
    CHECK(res.steps[k].infidelity <= 1.0);
  }
}

TEST_CASE("circuit accounting per evolution step") {
  BurgersRun run;
  run.phys.t_final = 2.0 * burgers_tau(run.phys);
  run.ansatz = AnsatzSpec{3, 2};
  run.sgeo.sweeps = 3;
  Estimator est = Estimator::exact();
  BurgersResult res = run_burgers(run, est);

  const std::uint64_t per_step = 10ull * 9ull * 3ull;  // families * parameters * sweeps
  REQUIRE(res.steps.size() == 3);
  CHECK(res.steps[1].circuits == per_step);
  CHECK(res.steps[2].circuits == 2 * per_step);
  CHECK(res.evolution_circuits == 2 * per_step);

  BurgersRun base = run;
  base.optimizer = OptimizerKind::baseline;
  base.baseline.max_evals = 30;
  Estimator est2 = Estimator::exact();
  BurgersResult rb = run_burgers(base, est2);
  std::uint64_t prev = 0;
  for (std::size_t k = 1; k < rb.steps.size(); ++k) {
    const std::uint64_t delta = rb.steps[k].circuits - prev;
    prev = rb.steps[k].circuits;
    // five overlaps per cost call plus the final bracket readout
    CHECK(delta == 5ull * (rb.steps[k].evals.size() + 1));
  }
}

TEST_CASE("configuration errors in evolution runs") {
  BurgersRun run;
  run.ansatz = AnsatzSpec{2, 2};  // register does not match the default grid
  Estimator est = Estimator::exact();
  CHECK_THROWS(run_burgers(run, est));

  BurgersRun bad;
  bad.ansatz = AnsatzSpec{3, 2};
  bad.phys.t_final = 1.7 * burgers_tau(bad.phys);  // not a whole number of steps
  CHECK_THROWS(run_burgers(bad, est));
}
