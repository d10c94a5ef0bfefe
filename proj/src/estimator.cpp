#include "sgeo/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sgeo/state_vector.hpp"

namespace sgeo {

Estimator Estimator::exact() { return Estimator(); }

Estimator Estimator::sampling(long shots, std::uint64_t master_seed) {
  if (shots < 1) throw std::invalid_argument("shots must be positive");
  Estimator e;
  e.mode_ = EstMode::shots;
  e.shots_ = shots;
  e.seed_ = master_seed;
  return e;
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + index * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RealEstimate Estimator::measure_real(double value) {
  if (!(std::abs(value) <= 1.0 + 1e-9))
    throw std::invalid_argument("measured expectation outside [-1, 1]");
  const std::uint64_t tick = ++counter_;
  if (mode_ == EstMode::exact) return {value, 0.0};
  const double p = std::clamp((1.0 + value) / 2.0, 0.0, 1.0);
  std::mt19937_64 eng(mix_seed(seed_, tick));
  std::binomial_distribution<long> dist(shots_, p);
  const long k = dist(eng);
  const double est = 2.0 * static_cast<double>(k) / static_cast<double>(shots_) - 1.0;
  const double var = std::max(0.0, 1.0 - est * est);
  return {est, std::sqrt(var / static_cast<double>(shots_))};
}

namespace {

void check_inputs(const Circuit& left, const std::vector<MiddleOp>& middle,
                  const Circuit& right) {
  if (left.n_qubits != right.n_qubits)
    throw std::invalid_argument("overlap: register size mismatch");
  const std::size_t d = std::size_t{1} << right.n_qubits;
  for (const MiddleOp& op : middle) {
    if (std::holds_alternative<AdderOp>(op)) {
      if (std::get<AdderOp>(op).n_qubits != right.n_qubits)
        throw std::invalid_argument("overlap: adder register size mismatch");
    } else {
      const DiagonalOp& dg = std::get<DiagonalOp>(op);
      if (dg.diag.size() != d)
        throw std::invalid_argument("overlap: diagonal size mismatch");
      for (double v : dg.diag)
        if (std::abs(v) > 1.0 + 1e-12)
          throw std::invalid_argument("overlap: diagonal entry exceeds 1 (unnormalized diagonal)");
    }
  }
}

}  // namespace

RealEstimate overlap_real(const Circuit& left, const std::vector<MiddleOp>& middle,
                          const Circuit& right, Estimator& est) {
  if (est.circuit_mode()) return hadamard_test_circuit(left, middle, right, est);
  check_inputs(left, middle, right);
  StateVec ket = run_circuit(right);
  for (const MiddleOp& op : middle) apply(ket, op);
  const StateVec bra = run_circuit(left);
  const double v = inner(bra, ket).real();
  if (std::abs(v) > 1.0 + 1e-9)
    throw std::invalid_argument("overlap magnitude exceeds 1 (middle chain norm > 1)");
  return est.measure_real(v);
}

RealEstimate hadamard_test_circuit(const Circuit& left, const std::vector<MiddleOp>& middle,
                                   const Circuit& right, Estimator& est) {
  check_inputs(left, middle, right);
  const int n = right.n_qubits;
  const std::size_t d = std::size_t{1} << n;

  // One copy register per diagonal; the diagonal becomes a state on that
  // register, so it must have unit 2-norm. Entries that do not form a unit
  // vector are handled by normalizing and rescaling the measured value.
  int n_diag = 0;
  std::vector<std::vector<double>> diag_states;
  double scale = 1.0;
  for (const MiddleOp& op : middle) {
    if (!std::holds_alternative<DiagonalOp>(op)) continue;
    const DiagonalOp& dg = std::get<DiagonalOp>(op);
    double nrm = 0.0;
    for (double v : dg.diag) nrm += v * v;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-14) {
      // zero operator; result is exactly zero, still one executed circuit
      RealEstimate r = est.measure_real(0.0);
      r.value = 0.0;
      r.std_error = 0.0;
      return r;
    }
    std::vector<double> st(dg.diag);
    for (double& v : st) v /= nrm;
    diag_states.push_back(std::move(st));
    scale *= nrm;
    ++n_diag;
  }

  const int total = n * (1 + n_diag) + 1;
  if (total > est.qubit_cap())
    throw std::invalid_argument("hadamard test register exceeds qubit cap");
  const int anc = total - 1;
  const std::uint64_t amask = std::uint64_t{1} << anc;

  StateVec s = StateVec::zero(total);
  apply_shifted(s, Gate::h(anc), 0);

  // controlled W, W = U_left^dag . M . U_right on the extended register
  for (const CircuitOp& op : right.ops)
    std::visit([&](const auto& o) { apply_shifted(s, o, 0, amask); }, op);
  int diag_idx = 0;
  for (const MiddleOp& op : middle) {
    if (std::holds_alternative<AdderOp>(op)) {
      apply_shifted(s, std::get<AdderOp>(op), 0, amask);
    } else {
      const int reg = n * (1 + diag_idx);
      StatePrep prep{diag_states[static_cast<std::size_t>(diag_idx)]};
      apply_shifted(s, prep, reg, amask);
      for (int q = 0; q < n; ++q)
        apply_shifted(s, Gate::cnot(q, reg + q), 0, amask);
      ++diag_idx;
    }
  }
  for (auto it = left.ops.rbegin(); it != left.ops.rend(); ++it) {
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, Gate>) {
            apply_shifted(s, o.adjoint(), 0, amask);
          } else {
            apply_shifted(s, o, 0, amask);  // Householder prep is self-inverse
          }
        },
        *it);
  }

  apply_shifted(s, Gate::h(anc), 0);

  double p_diff = 0.0;  // p(ancilla=0) - p(ancilla=1)
  for (std::size_t i = 0; i < s.dim(); ++i)
    p_diff += ((i & amask) ? -1.0 : 1.0) * std::norm(s.amps[i]);

  RealEstimate r = est.measure_real(std::clamp(p_diff, -1.0, 1.0));
  r.value *= scale;
  r.std_error *= scale;
  return r;
}

}  // namespace sgeo
