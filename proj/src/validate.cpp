#include "sgeo/validate.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "sgeo/burgers.hpp"
#include "sgeo/dense.hpp"
#include "sgeo/expectation_cost.hpp"
#include "sgeo/nlse.hpp"
#include "sgeo/residual_cost.hpp"
#include "sgeo/state_vector.hpp"

namespace sgeo {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Checker {
  double worst = 0.0;
  bool ok = true;
  std::string note;

  void bound(double err, double tol, const std::string& what) {
    worst = std::max(worst, err);
    if (!(err <= tol) && ok) {
      ok = false;
      std::ostringstream os;
      os << what << " off by " << err << " (tol " << tol << ")";
      note = os.str();
    }
  }
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
  ValidateFamily family(const std::string& name) const {
    ValidateFamily f;
    f.name = name;
    f.pass = ok;
    if (ok) {
      std::ostringstream os;
      os << "worst " << worst;
      f.detail = os.str();
    } else {
      f.detail = note;
    }
    return f;
  }
};

std::vector<double> random_angles(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  std::vector<double> v(static_cast<std::size_t>(count));
  for (double& x : v) x = dist(rng);
  return v;
}

std::vector<double> random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> gauss;
  std::vector<double> v(dim);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& x : v) {
      x = gauss(rng);
      n2 += x * x;
    }
  } while (n2 < 1e-12);
  const double n = std::sqrt(n2);
  for (double& x : v) x /= n;
  return v;
}

// Dense matrix of one expansion term weighted over all terms.
CMat expansion_matrix(const LcuExpansion& ex, const std::vector<double>& free_angles) {
  const int dim = 1 << ex.term_circuit(0).n_qubits;
  CMat sum = CMat::zero(dim);
  for (int t = 0; t < ex.term_count(); ++t) {
    const double c = ex.coefficient(t, free_angles);
    sum = mat_add(sum, mat_scale(circuit_unitary(ex.term_circuit(t)), c));
  }
  return sum;
}

ValidateFamily check_lcu(const std::string& name, int which) {
  std::mt19937_64 rng(0xA100 + static_cast<std::uint64_t>(which));
  Checker ch;
  for (int draw = 0; draw < 10; ++draw) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int d = static_cast<int>(rng() % 3);
    AnsatzSpec spec{n, d};
    if (which == 2 && spec.param_count() < 2) continue;
    ParamVector p{random_angles(rng, spec.param_count())};
    CMat full = circuit_unitary(bind(spec, p));
    CMat rec = CMat::zero(full.dim);
    if (which == 1) {
      const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.param_count()));
      rec = expansion_matrix(lcu_single(spec, p, j), {p[j]});
    } else if (which == 2) {
      const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.param_count()));
      int k = j;
      while (k == j) k = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.param_count()));
      LcuExpansion ex = lcu_pair(spec, p, j, k);
      rec = expansion_matrix(ex, {p[ex.free_indices()[0]], p[ex.free_indices()[1]]});
    } else if (which == 3) {
      if (spec.param_count() < 2) continue;
      std::vector<std::vector<int>> groups{{0, 1}};
      ParamVector tied{p.values(), groups};
      CMat tied_full = circuit_unitary(bind(spec, tied));
      LcuExpansion ex = lcu_pair(spec, tied, 0, 1);
      ch.require(ex.tied(), "pair of tied indices should produce the tied form");
      rec = expansion_matrix(ex, {tied[0]});
      ch.bound(mat_max_abs_diff(tied_full, rec), 1e-11, "tied reconstruction");
      continue;
    } else {
      AnsatzSpec small{1 + static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 2)};
      ParamVector ps{random_angles(rng, small.param_count())};
      full = circuit_unitary(bind(small, ps));
      rec = expansion_matrix(lcu_full(small, ps), ps.values());
    }
    ch.bound(mat_max_abs_diff(full, rec), 1e-11, "reconstruction");
  }
  return ch.family(name);
}

ValidateFamily check_gate_decomp() {
  std::mt19937_64 rng(0xDEC0);
  Checker ch;
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  const std::vector<std::string> paulis{"X", "Z", "XY", "ZZ", "YXZ"};
  for (int draw = 0; draw < 10; ++draw) {
    const std::string& pauli = paulis[draw % paulis.size()];
    const int n = static_cast<int>(pauli.size());
    std::vector<int> targets(pauli.size());
    for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = static_cast<int>(i);
    const double angle = dist(rng);
    Circuit direct;
    direct.n_qubits = n;
    direct.ops.push_back(Gate::pauli_rot(pauli, targets, angle));
    CMat sum = CMat::zero(1 << n);
    for (const WeightedOps& term : decompose_pauli_rot(pauli, targets, angle)) {
      Circuit c;
      c.n_qubits = n;
      for (const Gate& g : term.gates) c.ops.push_back(g);
      sum = mat_add(sum, mat_scale(circuit_unitary(c), term.coeff));
    }
    ch.bound(mat_max_abs_diff(circuit_unitary(direct), sum), 1e-11, "rotation decomposition");
  }
  for (int draw = 0; draw < 6; ++draw) {
    const bool plus = (draw % 2) == 0;
    const double angle = dist(rng);
    Circuit direct;
    direct.n_qubits = 2;
    for (const Gate& g : swap_rot_gates(plus, 0, 1, angle)) direct.ops.push_back(g);
    CMat sum = CMat::zero(4);
    for (const WeightedOps& term : decompose_swap_rot(plus, 0, 1, angle)) {
      Circuit c;
      c.n_qubits = 2;
      for (const Gate& g : term.gates) c.ops.push_back(g);
      sum = mat_add(sum, mat_scale(circuit_unitary(c), term.coeff));
    }
    ch.bound(mat_max_abs_diff(circuit_unitary(direct), sum), 1e-11, "swap decomposition");
  }
  return ch.family("gate-decompositions");
}

Circuit random_target(std::mt19937_64& rng, int n) {
  Circuit t;
  t.n_qubits = n;
  t.ops.push_back(StatePrep{random_unit(rng, std::size_t{1} << n)});
  return t;
}

ValidateFamily check_residual_reconstruction() {
  std::mt19937_64 rng(0xA1FA);
  Checker ch;
  Estimator est = Estimator::exact();
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  for (int draw = 0; draw < 8; ++draw) {
    const int n = 1 + static_cast<int>(rng() % 3);
    AnsatzSpec spec{n, 1 + static_cast<int>(rng() % 2)};
    ParamVector p{random_angles(rng, spec.param_count())};
    Circuit target = random_target(rng, n);

    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.param_count()));
    AlphaCoeffs ac = estimate_alpha(target, spec, p, j, est);
    int k = j;
    while (k == j) k = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.param_count()));
    BetaCoeffs bc = estimate_beta(target, spec, p, j, k, est);
    GammaCoeffs gc = estimate_gamma(target, spec, p, est);

    for (int s = 0; s < 4; ++s) {
      const double lj = dist(rng), lk = dist(rng);
      ParamVector q{p.values()};
      q.set(j, lj);
      ch.bound(std::abs(residual_curve(ac, lj) - direct_residual(target, spec, q, est)), 1e-9,
               "one-parameter residual");
      q.set(k, lk);
      ch.bound(std::abs(residual_surface(bc, lj, lk) - direct_residual(target, spec, q, est)),
               1e-9, "two-parameter residual");
      std::vector<double> all = random_angles(rng, spec.param_count());
      ch.bound(std::abs(residual_full(gc, all) -
                        direct_residual(target, spec, ParamVector{all}, est)),
               1e-9, "full residual");
    }
  }
  return ch.family("residual-reconstruction");
}

ValidateFamily check_residual_derivatives() {
  std::mt19937_64 rng(0xD1FF);
  Checker ch;
  Estimator est = Estimator::exact();
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  for (int draw = 0; draw < 8; ++draw) {
    const int n = 1 + static_cast<int>(rng() % 2);
    AnsatzSpec spec{n, 1};
    ParamVector p{random_angles(rng, spec.param_count())};
    Circuit target = random_target(rng, n);
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.param_count()));
    AlphaCoeffs ac = estimate_alpha(target, spec, p, j, est);
    const double l = dist(rng);
    // fourth-order central stencils; h balances truncation against roundoff
    const double h = 0.05;
    auto f = [&](double x) { return residual_curve(ac, x); };
    for (int order = 1; order <= 3; ++order) {
      double fd = 0.0;
      if (order == 1) {
        fd = (-f(l + 2 * h) + 8 * f(l + h) - 8 * f(l - h) + f(l - 2 * h)) / (12.0 * h);
      } else if (order == 2) {
        fd = (-f(l + 2 * h) + 16 * f(l + h) - 30 * f(l) + 16 * f(l - h) - f(l - 2 * h)) /
             (12.0 * h * h);
      } else {
        fd = (-f(l + 3 * h) + 8 * f(l + 2 * h) - 13 * f(l + h) + 13 * f(l - h) -
              8 * f(l - 2 * h) + f(l - 3 * h)) /
             (8.0 * h * h * h);
      }
      const double an = residual_derivative(ac, l, order);
      ch.bound(std::abs(an - fd) / std::max(1.0, std::abs(an)), 1e-4, "derivative");
    }
    ch.bound(std::abs(residual_curve(ac, l) - 16.0 * residual_derivative(ac, l, 4) - 2.0), 1e-10,
             "fourth-derivative closure");
  }
  return ch.family("residual-derivatives");
}

CMat random_hermitian(std::mt19937_64& rng, int dim, double* scale) {
  std::normal_distribution<double> gauss;
  CMat m = CMat::zero(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = r; c < dim; ++c) {
      const cplx v = r == c ? cplx{gauss(rng), 0.0} : cplx{gauss(rng), gauss(rng)};
      m.at(r, c) = v;
      m.at(c, r) = std::conj(v);
    }
  }
  double max_abs = 0.0;
  for (const cplx& v : m.a) max_abs = std::max(max_abs, std::abs(v));
  *scale = std::max(1.0, max_abs * dim);  // Frobenius-style spectral bound
  return m;
}

ValidateFamily check_expectation_reconstruction() {
  std::mt19937_64 rng(0xE0E0);
  Checker ch;
  Estimator est = Estimator::exact();
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  for (int draw = 0; draw < 8; ++draw) {
    const int n = 1 + static_cast<int>(rng() % 2);
    AnsatzSpec spec{n, 1 + static_cast<int>(rng() % 2)};
    double scale = 1.0;
    CMat m = random_hermitian(rng, 1 << n, &scale);
    DenseObservable obs(std::move(m), scale);
    ParamVector p{random_angles(rng, spec.param_count())};
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.param_count()));
    KappaCoeffs kc = estimate_kappa(obs, spec, p, j, est);
    int k = j;
    while (k == j) k = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.param_count()));
    ZetaCoeffs zc = estimate_zeta(obs, spec, p, j, k, est);
    for (int s = 0; s < 4; ++s) {
      const double lj = dist(rng), lk = dist(rng);
      ParamVector q{p.values()};
      q.set(j, lj);
      ch.bound(std::abs(expectation_curve(kc, lj) - direct_expectation(obs, spec, q, est)), 1e-9,
               "one-parameter expectation");
      q.set(k, lk);
      ch.bound(std::abs(expectation_surface(zc, lj, lk) - direct_expectation(obs, spec, q, est)),
               1e-9, "two-parameter expectation");
    }
  }
  return ch.family("expectation-reconstruction");
}

ValidateFamily check_harmonic_fit() {
  std::mt19937_64 rng(0xF17);
  Checker ch;
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::uniform_real_distribution<double> ldist(-kPi, kPi);
  for (int draw = 0; draw < 20; ++draw) {
    KappaCoeffs truth;
    truth.k00 = dist(rng);
    truth.kpp = dist(rng);
    truth.k0p = dist(rng);
    KappaCoeffs fit = harmonic_from_samples(expectation_curve(truth, 0.0),
                                            expectation_curve(truth, kPi),
                                            expectation_curve(truth, kPi / 2.0));
    for (int s = 0; s < 6; ++s) {
      const double l = ldist(rng);
      ch.bound(std::abs(expectation_curve(fit, l) - expectation_curve(truth, l)), 1e-12,
               "three-point harmonic fit");
    }
  }
  return ch.family("harmonic-fit");
}

ValidateFamily check_shots_statistics() {
  Checker ch;
  const long shots = 4000;
  const double value = 0.3;
  const int seeds = 200;
  double mean = 0.0;
  for (int s = 0; s < seeds; ++s) {
    Estimator est = Estimator::sampling(shots, static_cast<std::uint64_t>(s + 1));
    RealEstimate r = est.measure_real(value);
    mean += r.value;
    ch.require(r.std_error > 0.0 && r.std_error < 1.0, "standard error out of range");
    ch.require(std::abs(r.value) <= 1.0, "sampled mean out of range");
  }
  mean /= seeds;
  const double sigma = std::sqrt((1.0 - value * value) / static_cast<double>(shots)) /
                       std::sqrt(static_cast<double>(seeds));
  ch.bound(std::abs(mean - value), 4.0 * sigma, "sample mean bias");
  Estimator a = Estimator::sampling(shots, 7);
  Estimator b = Estimator::sampling(shots, 7);
  ch.require(a.measure_real(0.25).value == b.measure_real(0.25).value,
             "same seed should reproduce the same estimate");
  return ch.family("shots-statistics");
}

ValidateFamily check_hadamard_test() {
  std::mt19937_64 rng(0x4AD);
  Checker ch;
  Estimator direct = Estimator::exact();
  Estimator circuit = Estimator::exact();
  circuit.set_circuit_mode(true);
  for (int draw = 0; draw < 12; ++draw) {
    const int n = 1 + static_cast<int>(rng() % 3);
    AnsatzSpec spec{n, 1};
    ParamVector pl{random_angles(rng, spec.param_count())};
    ParamVector pr{random_angles(rng, spec.param_count())};
    Circuit left = bind(spec, pl);
    Circuit right = bind(spec, pr);
    std::vector<MiddleOp> middles;
    const int pick = draw % 4;
    if (pick == 1) middles.push_back(AdderOp{n, -1});
    if (pick == 2) middles.push_back(DiagonalOp{random_unit(rng, std::size_t{1} << n)});
    if (pick == 3) {
      middles.push_back(DiagonalOp{random_unit(rng, std::size_t{1} << n)});
      middles.push_back(AdderOp{n, +1});
    }
    const double want = overlap_real(left, middles, right, direct).value;
    const double got = overlap_real(left, middles, right, circuit).value;
    ch.bound(std::abs(want - got), 1e-12, "ancilla-test overlap");
  }
  return ch.family("hadamard-test");
}

ValidateFamily check_adder_shift(const ValidateOptions& opts) {
  std::mt19937_64 rng(0x5417);
  Checker ch;
  Estimator est = Estimator::exact();
  const int fwd = opts.flip_adder ? +1 : -1;
  for (int draw = 0; draw < 10; ++draw) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> a = random_unit(rng, dim);
    std::vector<double> b = random_unit(rng, dim);
    Circuit ca, cb;
    ca.n_qubits = cb.n_qubits = n;
    ca.ops.push_back(StatePrep{a});
    cb.ops.push_back(StatePrep{b});
    // (S+ b)_i = b_{i+1}, so <a|S+|b> = sum_i a_i b_{i+1}
    double want = 0.0;
    for (std::size_t i = 0; i < dim; ++i) want += a[i] * b[(i + 1) % dim];
    const double got = overlap_real(ca, {AdderOp{n, fwd}}, cb, est).value;
    ch.bound(std::abs(want - got), 1e-12, "forward shift overlap");
  }
  return ch.family("adder-shift");
}

ValidateFamily check_diagonal_copy() {
  std::mt19937_64 rng(0xD1A6);
  Checker ch;
  Estimator est = Estimator::exact();
  for (int draw = 0; draw < 10; ++draw) {
    const int n = 1 + static_cast<int>(rng() % 3);
    AnsatzSpec spec{n, 1 + static_cast<int>(rng() % 2)};
    ParamVector p{random_angles(rng, spec.param_count())};
    Circuit u = bind(spec, p);
    std::vector<double> psi = ansatz_state(spec, p);
    DiagonalOp d{psi};
    double quartic = 0.0, quadratic_w = 0.0;
    std::vector<double> w = random_unit(rng, psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
      quartic += psi[i] * psi[i] * psi[i] * psi[i];
      quadratic_w += w[i] * psi[i] * psi[i];
    }
    ch.bound(std::abs(overlap_real(u, {d, d}, u, est).value - quartic), 1e-12, "state-copy square");
    ch.bound(std::abs(overlap_real(u, {DiagonalOp{w}}, u, est).value - quadratic_w), 1e-12,
             "diagonal expectation");
  }
  return ch.family("diagonal-copy");
}

ValidateFamily check_burgers_step(const ValidateOptions& opts) {
  std::mt19937_64 rng(0xB5B5);
  Checker ch;
  const int fwd = opts.flip_adder ? +1 : -1;
  for (int draw = 0; draw < 10; ++draw) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const std::size_t dim = std::size_t{1} << n;
    const double dx = 2.0 / static_cast<double>(dim);
    const double nu = 0.2, tau = 0.01;
    std::vector<double> u = random_unit(rng, dim);
    for (double& x : u) x *= 1.5;
    double lam = 0.0;
    for (double x : u) lam += x * x;
    lam = std::sqrt(lam);
    std::vector<double> psi(u.size());
    for (std::size_t i = 0; i < dim; ++i) psi[i] = u[i] / lam;

    StateVec s{n, {}};
    s.amps.assign(dim, {0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) s.amps[i] = psi[i];
    StateVec plus = s, minus = s;
    apply(plus, AdderOp{n, fwd});
    apply(minus, AdderOp{n, -fwd});

    const double l1 = lam * tau * nu / (2.0 * dx * dx);
    const double l2 = lam * lam * tau / (2.0 * dx);
    std::vector<double> got(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const double sp = plus.amps[i].real(), sm = minus.amps[i].real();
      got[i] = lam * psi[i] + l1 * (sp + sm - 2.0 * psi[i]) - l2 * psi[i] * (sp - sm);
    }
    std::vector<double> want = classical_step(u, nu, tau, dx);
    for (std::size_t i = 0; i < dim; ++i) {
      ch.bound(std::abs(got[i] - want[i]), 1e-12, "step-operator identity");
    }
  }
  return ch.family("fluid-step-identity");
}

ValidateFamily check_sgeo_monotone() {
  std::mt19937_64 rng(0x5E0);
  Checker ch;
  Estimator est = Estimator::exact();
  for (int draw = 0; draw < 4; ++draw) {
    const int n = 1 + static_cast<int>(rng() % 2);
    AnsatzSpec spec{n, 1};
    Circuit target = random_target(rng, n);
    auto provider = [&](const ParamVector& p, const std::vector<int>& group,
                        Estimator& e) -> CurveSection {
      AlphaCoeffs ac = estimate_alpha(target, spec, p, group.front(), e);
      CurveSection sec;
      sec.value = [ac](double l) { return residual_curve(ac, l); };
      sec.derivative = [ac](double l, int order) { return residual_derivative(ac, l, order); };
      ClosedFormResult cf = closed_form_min_residual(ac.a0, ac.api);
      if (!cf.degenerate) sec.minimizer_candidates.push_back(cf.lambda);
      sec.circuits_charged = 2;
      return sec;
    };
    ParamVector init{random_angles(rng, spec.param_count())};
    SgeoConfig cfg;
    cfg.sweeps = 3;
    OptTrace tr = sgeo_run(provider, init, cfg, est);
    double prev = direct_residual(target, spec, init, est);
    for (const UpdateRecord& u : tr.updates) {
      ch.require(u.cost <= prev + 1e-12, "cost increased within a sweep");
      prev = u.cost;
    }
  }
  return ch.family("sgeo-monotonic");
}

ValidateFamily check_closed_form() {
  std::mt19937_64 rng(0xC105);
  Checker ch;
  std::normal_distribution<double> gauss;
  GridSpec grid;
  const double spacing = 2.0 * kPi / grid.points;
  auto mod_dist = [](double a, double b) {
    double d = std::abs(wrap_angle(a - b));
    return std::min(d, 2.0 * kPi - d);
  };
  for (int draw = 0; draw < 20; ++draw) {
    const double s0 = gauss(rng), spi = gauss(rng);
    auto curve = [&](double l) {
      const double g = std::cos(l / 2.0) * s0 + std::sin(l / 2.0) * spi;
      return -g * g;
    };
    ClosedFormResult cf = closed_form_min_residual(s0, spi);
    if (!cf.degenerate) {
      GridResult g = grid_minimize(curve, grid);
      ch.require(curve(cf.lambda) <= g.value + 1e-12, "closed form lost to the grid");
      ch.bound(mod_dist(cf.lambda, g.lambda), spacing + 1e-12, "closed form far from grid winner");
    }
    const double A = gauss(rng), B = gauss(rng), C = gauss(rng);
    auto harm = [&](double l) { return A + B * std::cos(l) + C * std::sin(l); };
    ClosedFormResult hf = closed_form_min_harmonic(A, B, C);
    if (!hf.degenerate) {
      GridResult g = grid_minimize(harm, grid);
      ch.require(harm(hf.lambda) <= g.value + 1e-12, "harmonic closed form lost to the grid");
      ch.bound(mod_dist(hf.lambda, g.lambda), spacing + 1e-12,
               "harmonic closed form far from grid winner");
    }
  }
  ch.bound(std::abs(closed_form_min_residual(std::sqrt(0.5), std::sqrt(0.5)).lambda - kPi / 2.0),
           1e-12, "pinned residual example");
  ch.bound(std::abs(closed_form_min_harmonic(0.0, 1.0, 0.0).lambda + kPi), 1e-12,
           "pinned harmonic example");
  return ch.family("closed-form-minima");
}

ValidateFamily check_nlse_energy() {
  std::mt19937_64 rng(0x7157);
  Checker ch;
  Estimator est = Estimator::exact();
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  NlseParams np;
  np.n_qubits = 3;
  np.g = 250.0;
  AnsatzSpec spec{3, 2};
  for (int draw = 0; draw < 6; ++draw) {
    ParamVector p{random_angles(rng, spec.param_count())};
    EnergyBreakdown via_circuits = direct_energy(np, spec, p, est);
    EnergyBreakdown dense = energy_of_state(np, ansatz_state(spec, p));
    ch.bound(std::abs(via_circuits.total() - dense.total()), 1e-10, "energy agreement");
    ch.require(via_circuits.interaction >= 0.0, "interaction energy must be nonnegative");

    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(spec.param_count()));
    GammaTerms gt = estimate_gamma_terms(np, spec, p, j, est);
    EnergyCurve curve = energy_curve(np, gt);
    for (int s = 0; s < 4; ++s) {
      const double l = dist(rng);
      ParamVector q{p.values()};
      q.set(j, l);
      const double direct = direct_energy(np, spec, q, est).total();
      ch.bound(std::abs(curve.value(l) - direct) / std::max(1.0, std::abs(direct)), 1e-9,
               "energy reconstruction");
    }
  }
  return ch.family("nlse-energy");
}

ValidateFamily check_determinism() {
  Checker ch;
  NlseRun run;
  run.phys.n_qubits = 2;
  run.phys.g = 25.0;
  run.ansatz = {2, 1};
  run.sgeo.sweeps = 2;
  run.seed = 11;
  Estimator e1 = Estimator::sampling(500, run.seed);
  Estimator e2 = Estimator::sampling(500, run.seed);
  NlseResult r1 = solve_ground_state(run, e1);
  NlseResult r2 = solve_ground_state(run, e2);
  ch.require(r1.final_params.values() == r2.final_params.values(),
             "same seed should give identical parameters");
  ch.require(r1.circuits == r2.circuits, "same seed should charge identical circuit counts");
  for (std::size_t i = 0; i < r1.records.size(); ++i) {
    ch.require(r1.records[i].energy == r2.records[i].energy,
               "same seed should record identical energies");
  }
  return ch.family("determinism");
}

}  // namespace

ValidateReport run_validate(const ValidateOptions& opts) {
  ValidateReport report;
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      report.families.push_back(fn());
    } catch (const std::exception& ex) {
      ValidateFamily f;
      f.name = name;
      f.pass = false;
      f.detail = std::string("exception: ") + ex.what();
      report.families.push_back(f);
    }
  };
  guarded("lcu-single", [] { return check_lcu("lcu-single", 1); });
  guarded("lcu-pair", [] { return check_lcu("lcu-pair", 2); });
  guarded("lcu-tied", [] { return check_lcu("lcu-tied", 3); });
  guarded("lcu-full", [] { return check_lcu("lcu-full", 4); });
  guarded("gate-decompositions", [] { return check_gate_decomp(); });
  guarded("residual-reconstruction", [] { return check_residual_reconstruction(); });
  guarded("residual-derivatives", [] { return check_residual_derivatives(); });
  guarded("expectation-reconstruction", [] { return check_expectation_reconstruction(); });
  guarded("harmonic-fit", [] { return check_harmonic_fit(); });
  guarded("shots-statistics", [] { return check_shots_statistics(); });
  guarded("hadamard-test", [] { return check_hadamard_test(); });
  guarded("adder-shift", [&] { return check_adder_shift(opts); });
  guarded("diagonal-copy", [] { return check_diagonal_copy(); });
  guarded("fluid-step-identity", [&] { return check_burgers_step(opts); });
  guarded("sgeo-monotonic", [] { return check_sgeo_monotone(); });
  guarded("closed-form-minima", [] { return check_closed_form(); });
  guarded("nlse-energy", [] { return check_nlse_energy(); });
  guarded("determinism", [] { return check_determinism(); });
  return report;
}

}  // namespace sgeo
