#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <span>
#include <stdexcept>

#include "oracles.hpp"
#include "sgeo/ansatz.hpp"
#include "sgeo/dense.hpp"
#include "sgeo/state_vector.hpp"

using namespace sgeo;

namespace {

constexpr double kPi = 3.14159265358979323846;

CMat expansion_sum(const LcuExpansion& ex, std::span<const double> free_angles, int n) {
  CMat sum = CMat::zero(1 << n);
  for (int t = 0; t < ex.term_count(); ++t) {
    sum = mat_add(sum, mat_scale(circuit_unitary(ex.term_circuit(t)),
                                 ex.coefficient(t, free_angles)));
  }
  return sum;
}

std::vector<double> angles_at(const ParamVector& p, const std::vector<int>& idx) {
  std::vector<double> out;
  for (int i : idx) out.push_back(p[i]);
  return out;
}

oracle::Mat gates_matrix(const std::vector<Gate>& gates, int n) {
  oracle::Mat m = oracle::Mat::Identity(1 << n, 1 << n);
  for (const Gate& g : gates) m = oracle::gate_matrix(g, n) * m;
  return m;
}

// exp(-i angle/2 (XX +/- YY)) on two qubits, built from the invariant
// two-dimensional block it rotates
oracle::Mat swap_rot_oracle(bool plus_yy, double angle) {
  oracle::Mat m = oracle::Mat::Identity(4, 4);
  const std::complex<double> c(std::cos(angle), 0.0);
  const std::complex<double> s(0.0, -std::sin(angle));
  const int a = plus_yy ? 1 : 0;
  const int b = plus_yy ? 2 : 3;
  m(a, a) = c;
  m(b, b) = c;
  m(a, b) = s;
  m(b, a) = s;
  return m;
}

}  // namespace

TEST_CASE("parameter counting and circuit layout") {
  CHECK(AnsatzSpec{3, 2}.param_count() == 9);
  CHECK(AnsatzSpec{4, 3}.param_count() == 16);
  CHECK(AnsatzSpec{2, 0}.param_count() == 2);

  AnsatzSpec flat{2, 0};
  Circuit c = bind(flat, ParamVector{{0.3, -0.4}});
  CHECK(c.ops.size() == 2);  // two rotations, no entangler at depth zero

  AnsatzSpec spec{3, 2};
  Circuit d = bind(spec, ParamVector{std::vector<double>(9, 0.1)});
  int rotations = 0, entanglers = 0;
  for (const CircuitOp& op : d.ops) {
    const Gate& g = std::get<Gate>(op);
    if (g.kind == Gate::Kind::ry) ++rotations;
    if (g.kind == Gate::Kind::cnot) ++entanglers;
  }
  CHECK(rotations == 9);
  CHECK(entanglers == 4);  // (n-1) per entangling layer
}

TEST_CASE("bound states match the dense layer-by-layer construction") {
  const ParamVector zero{std::vector<double>(9, 0.0)};
  std::vector<double> ground = ansatz_state(AnsatzSpec{3, 2}, zero);
  CHECK(ground[0] == doctest::Approx(1.0));

  std::vector<double> tilted = ansatz_state(AnsatzSpec{1, 0}, ParamVector{{kPi / 2}});
  CHECK(tilted[0] == doctest::Approx(std::cos(kPi / 4)));
  CHECK(tilted[1] == doctest::Approx(std::sin(kPi / 4)));

  std::mt19937_64 rng(41);
  for (int n = 1; n <= 3; ++n) {
    for (int depth = 0; depth <= 2; ++depth) {
      std::vector<double> angles = oracle::random_angles(rng, n * (depth + 1));
      std::vector<double> got = ansatz_state(AnsatzSpec{n, depth}, ParamVector{angles});
      oracle::RVec expect = oracle::ansatz_state_vec(n, depth, angles);
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(std::abs(got[i] - expect(static_cast<Eigen::Index>(i))) < 1e-13);
      }
    }
  }
}

TEST_CASE("amplitudes stay real") {
  std::mt19937_64 rng(42);
  StateVec s = run_circuit(bind(AnsatzSpec{3, 2}, ParamVector{oracle::random_angles(rng, 9)}));
  double worst = 0.0;
  for (const cplx& a : s.amps) worst = std::max(worst, std::abs(a.imag()));
  CHECK(worst < 1e-12);
}

TEST_CASE("parameters wrap into the principal interval") {
  ParamVector p{{3.0 * kPi, -3.0 * kPi, 0.5}};
  CHECK(p[0] == doctest::Approx(-kPi));
  CHECK(p[1] == doctest::Approx(-kPi));
  CHECK(p[2] == doctest::Approx(0.5));
  p.set(2, 2.0 * kPi);
  CHECK(p[2] == doctest::Approx(0.0));
  for (double v : p.values()) {
    CHECK(v >= -kPi);
    CHECK(v < kPi);
  }
}

TEST_CASE("a full-turn offset only changes the global sign") {
  std::mt19937_64 rng(43);
  AnsatzSpec spec{2, 1};
  ParamVector p{oracle::random_angles(rng, 4)};
  std::vector<double> base = ansatz_state(spec, p, {{{1, 0.7}}});
  std::vector<double> shifted = ansatz_state(spec, p, {{{1, 0.7 + 2.0 * kPi}}});
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(std::abs(shifted[i] + base[i]) < 1e-13);
  }
}

TEST_CASE("tie groups share one value") {
  ParamVector p{{0.2, 0.9, -0.5, 0.9}, {{1, 3}}};
  CHECK(p[1] == p[3]);
  p.set(3, 1.1);
  CHECK(p[1] == doctest::Approx(1.1));
  CHECK(p[3] == doctest::Approx(1.1));
  p.set(1, -0.2);
  CHECK(p[3] == doctest::Approx(-0.2));

  CHECK(p.group_of(1) == std::vector<int>{1, 3});
  CHECK(p.group_of(0) == std::vector<int>{0});
  CHECK(p.is_group_leader(1));
  CHECK_FALSE(p.is_group_leader(3));
  CHECK(p.is_group_leader(0));

  CHECK_THROWS(ParamVector({0.0, 0.0, 0.0}, {{0, 1}, {1, 2}}));  // overlapping groups
  CHECK_THROWS(ParamVector({0.0, 0.0}, {{0, 5}}));               // member out of range
}

TEST_CASE("fixed assignments override single angles literally") {
  AnsatzSpec spec{1, 0};
  ParamVector p{{0.3}};

  std::vector<double> same = ansatz_state(spec, p, FixedAssignment{});
  std::vector<double> plain = ansatz_state(spec, p);
  CHECK(same[0] == doctest::Approx(plain[0]));
  CHECK(same[1] == doctest::Approx(plain[1]));

  // a parameter pinned at pi rotates |0> to +|1>, never to -|1>
  std::vector<double> flipped = ansatz_state(spec, p, {{{0, kPi}}});
  CHECK(std::abs(flipped[0]) < 1e-15);
  CHECK(flipped[1] == doctest::Approx(1.0));

  std::mt19937_64 rng(44);
  AnsatzSpec wide{3, 1};
  ParamVector q{oracle::random_angles(rng, 6)};
  std::vector<double> angles = q.values();
  angles[4] = kPi;
  std::vector<double> got = ansatz_state(wide, q, {{{4, kPi}}});
  oracle::RVec expect = oracle::ansatz_state_vec(3, 1, angles);
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(std::abs(got[i] - expect(static_cast<Eigen::Index>(i))) < 1e-13);
  }
}

TEST_CASE("single-parameter expansion reconstructs the unitary") {
  std::mt19937_64 rng(45);
  AnsatzSpec spec{3, 2};
  ParamVector p{oracle::random_angles(rng, 9)};
  CMat direct = circuit_unitary(bind(spec, p));
  for (int j = 0; j < 9; ++j) {
    LcuExpansion ex = lcu_single(spec, p, j);
    CHECK(ex.term_count() == 2);
    CHECK(ex.free_indices() == std::vector<int>{j});
    const double free[] = {p[j]};
    CHECK(mat_max_abs_diff(expansion_sum(ex, free, 3), direct) < 1e-12);
  }

  ParamVector zeroed{std::vector<double>(9, 0.0)};
  LcuExpansion at_zero = lcu_single(spec, zeroed, 4);
  const double z[] = {0.0};
  CHECK(at_zero.coefficient(0, z) == doctest::Approx(1.0));
  CHECK(at_zero.coefficient(1, z) == doctest::Approx(0.0));
}

TEST_CASE("pair expansion covers all index pairs") {
  std::mt19937_64 rng(46);
  AnsatzSpec spec{3, 1};
  ParamVector p{oracle::random_angles(rng, 6)};
  CMat direct = circuit_unitary(bind(spec, p));
  for (int j = 0; j < 6; ++j) {
    for (int k = 0; k < 6; ++k) {
      if (j == k) continue;
      LcuExpansion ex = lcu_pair(spec, p, j, k);
      CHECK(ex.term_count() == 4);
      CHECK_FALSE(ex.tied());
      std::vector<double> free = angles_at(p, ex.free_indices());
      CHECK(mat_max_abs_diff(expansion_sum(ex, free, 3), direct) < 1e-12);
    }
  }

  ParamVector zeroed{std::vector<double>(6, 0.0)};
  LcuExpansion ex = lcu_pair(spec, zeroed, 0, 3);
  const double z[] = {0.0, 0.0};
  CHECK(ex.coefficient(0, z) == doctest::Approx(1.0));
  for (int t = 1; t < 4; ++t) CHECK(std::abs(ex.coefficient(t, z)) < 1e-15);

  CHECK_THROWS(lcu_pair(spec, p, 2, 2));
}

TEST_CASE("tied pairs expand over a single shared angle") {
  std::mt19937_64 rng(47);
  std::vector<double> vals = oracle::random_angles(rng, 6);
  vals[5] = vals[2];
  AnsatzSpec spec{3, 1};
  ParamVector p{vals, {{2, 5}}};
  LcuExpansion ex = lcu_pair(spec, p, 2, 5);
  CHECK(ex.tied());

  const double lam[] = {p[2]};
  CMat direct = circuit_unitary(bind(spec, p));
  CHECK(mat_max_abs_diff(expansion_sum(ex, lam, 3), direct) < 1e-12);

  // the two mixed variants carry the same cos*sin weight
  const double probe[] = {0.83};
  CHECK(ex.coefficient(1, probe) == doctest::Approx(ex.coefficient(2, probe)));
}

TEST_CASE("full expansion sums over every fixing pattern") {
  std::mt19937_64 rng(48);

  AnsatzSpec tiny{1, 1};
  ParamVector pt{oracle::random_angles(rng, 2)};
  LcuExpansion ex2 = lcu_full(tiny, pt);
  CHECK(ex2.term_count() == 4);
  std::vector<double> free2 = angles_at(pt, ex2.free_indices());
  CHECK(mat_max_abs_diff(expansion_sum(ex2, free2, 1), circuit_unitary(bind(tiny, pt))) < 1e-12);

  const std::vector<double> zeros(2, 0.0);
  LcuExpansion exz = lcu_full(tiny, ParamVector{zeros});
  CHECK(exz.coefficient(0, zeros) == doctest::Approx(1.0));
  for (int t = 1; t < 4; ++t) CHECK(std::abs(exz.coefficient(t, zeros)) < 1e-15);

  AnsatzSpec mid{3, 1};
  ParamVector pm{oracle::random_angles(rng, 6)};
  LcuExpansion ex6 = lcu_full(mid, pm);
  CHECK(ex6.term_count() == 64);
  std::vector<double> free6 = angles_at(pm, ex6.free_indices());
  CHECK(mat_max_abs_diff(expansion_sum(ex6, free6, 3), circuit_unitary(bind(mid, pm))) < 1e-11);

  AnsatzSpec big{3, 4};  // 15 free parameters is past the term cap
  CHECK_THROWS(lcu_full(big, ParamVector{std::vector<double>(15, 0.0)}));
}

TEST_CASE("rotation gates decompose over their fixed-angle variants") {
  std::mt19937_64 rng(49);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  const std::vector<std::pair<std::string, std::vector<int>>> cases = {
      {"X", {0}}, {"Z", {1}}, {"XY", {0, 1}}, {"ZZ", {0, 2}}, {"XYZ", {0, 1, 2}}};
  for (const auto& [pauli, targets] : cases) {
    const double a = ang(rng);
    std::vector<WeightedOps> terms = decompose_pauli_rot(pauli, targets, a);
    CHECK(terms.size() == 2);
    oracle::Mat sum = oracle::Mat::Zero(8, 8);
    for (const WeightedOps& t : terms) sum += t.coeff * gates_matrix(t.gates, 3);
    CHECK(oracle::max_abs(sum - oracle::pauli_rot_mat(3, pauli, targets, a)) < 1e-12);
  }
  CHECK_THROWS(decompose_pauli_rot("XQ", {0, 1}, 0.5));
}

TEST_CASE("swap-family rotations and their three-term decomposition") {
  std::mt19937_64 rng(50);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (bool plus_yy : {true, false}) {
    for (int rep = 0; rep < 8; ++rep) {
      const double a = ang(rng);
      CHECK(oracle::max_abs(gates_matrix(swap_rot_gates(plus_yy, 0, 1, a), 2) -
                            swap_rot_oracle(plus_yy, a)) < 1e-13);

      std::vector<WeightedOps> terms = decompose_swap_rot(plus_yy, 0, 1, a);
      CHECK(terms.size() == 3);
      oracle::Mat sum = oracle::Mat::Zero(4, 4);
      for (const WeightedOps& t : terms) sum += t.coeff * gates_matrix(t.gates, 2);
      CHECK(oracle::max_abs(sum - swap_rot_oracle(plus_yy, a)) < 1e-12);
    }

    CHECK(oracle::max_abs(gates_matrix(swap_rot_gates(plus_yy, 0, 1, 0.0), 2) -
                          oracle::Mat::Identity(4, 4)) < 1e-14);

    // the angle-pi point is the diagonal +-ZZ operator
    oracle::Mat zz = oracle::Mat::Zero(4, 4);
    zz(0, 0) = 1;
    zz(1, 1) = -1;
    zz(2, 2) = -1;
    zz(3, 3) = 1;
    if (!plus_yy) zz = -zz;
    CHECK(oracle::max_abs(gates_matrix(swap_rot_gates(plus_yy, 0, 1, kPi), 2) - zz) < 1e-13);
  }
}
