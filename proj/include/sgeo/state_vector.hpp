#pragma once

#include <cstdint>

#include "sgeo/circuit.hpp"

namespace sgeo {

struct StateVec {
  int n_qubits = 0;
  std::vector<cplx> amps;

  static StateVec zero(int n_qubits);  // |0...0>
  std::size_t dim() const { return amps.size(); }
  double norm() const;
};

// In-place application on the register's own qubits (offset 0, no controls).
void apply(StateVec& s, const Gate& g);
void apply(StateVec& s, const StatePrep& p);
void apply(StateVec& s, const AdderOp& a);
void apply(StateVec& s, const DiagonalOp& d);
void apply(StateVec& s, const CircuitOp& op);
void apply(StateVec& s, const MiddleOp& op);

// Embedded application: the operator's qubits are shifted by `offset` and the
// action is restricted to the subspace where every qubit in `control_mask`
// is 1. This is the primitive the explicit Hadamard-test construction uses.
void apply_shifted(StateVec& s, const Gate& g, int offset, std::uint64_t control_mask = 0);
void apply_shifted(StateVec& s, const StatePrep& p, int offset, std::uint64_t control_mask = 0);
void apply_shifted(StateVec& s, const AdderOp& a, int offset, std::uint64_t control_mask = 0);
void apply_shifted(StateVec& s, const DiagonalOp& d, int offset, std::uint64_t control_mask = 0);

StateVec run_circuit(const Circuit& c);

cplx inner(const StateVec& a, const StateVec& b);  // <a|b>

double wrap_angle(double x);  // reduce into [-pi, pi)

}  // namespace sgeo
