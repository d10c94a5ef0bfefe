#pragma once

#include <cstdint>

#include "sgeo/circuit.hpp"

namespace sgeo {

enum class EstMode { exact, shots };

struct RealEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Books every executed circuit and, in SHOTS mode, replaces the exact value
// by a binomial draw at p = (1 + value)/2. Each circuit consumes one counter
// tick and derives its own random stream from hash(master_seed, tick), so the
// outcome of a given circuit does not depend on evaluation order.
class Estimator {
 public:
  Estimator() = default;  // exact mode
  static Estimator exact();
  static Estimator sampling(long shots, std::uint64_t master_seed);

  EstMode mode() const { return mode_; }
  long shots() const { return shots_; }
  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t circuits_used() const { return counter_; }

  // Validation mode: overlap_real assembles the explicit ancilla circuit
  // instead of taking the direct inner product.
  bool circuit_mode() const { return circuit_mode_; }
  void set_circuit_mode(bool on) { circuit_mode_ = on; }
  int qubit_cap() const { return qubit_cap_; }
  void set_qubit_cap(int cap) { qubit_cap_ = cap; }

  // One executed circuit whose exact expectation is `value` in [-1, 1].
  RealEstimate measure_real(double value);

 private:
  EstMode mode_ = EstMode::exact;
  long shots_ = 50000;
  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
  bool circuit_mode_ = false;
  int qubit_cap_ = 16;
};

// splitmix64-style stream seed for circuit `index` under `master`.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

// Re{ <0| U_left^dag M U_right |0> } where M is the middle chain applied to
// the ket in listed order. Advances the circuit counter by one.
RealEstimate overlap_real(const Circuit& left, const std::vector<MiddleOp>& middle,
                          const Circuit& right, Estimator& est);

// The same quantity evaluated through an explicit Hadamard-test circuit: one
// ancilla, controlled operators, and one copy register per diagonal factor
// (loaded by a state-prep unitary and fanned in with CNOTs). Errors out if
// the total register would exceed the estimator's qubit cap.
RealEstimate hadamard_test_circuit(const Circuit& left, const std::vector<MiddleOp>& middle,
                                   const Circuit& right, Estimator& est);

}  // namespace sgeo
