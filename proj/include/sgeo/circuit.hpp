#pragma once

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace sgeo {

using cplx = std::complex<double>;

// Gate on a simulated register. Qubit 0 is the least significant bit of the
// basis-state label, so |q1 q0> = |2*q1 + q0>.
struct Gate {
  enum class Kind { ry, h, x, cnot, pauli_rot, controlled };

  Kind kind = Kind::ry;
  int target = 0;      // ry/h/x target, cnot target
  int control = -1;    // cnot control, controlled-wrapper control
  double angle = 0.0;  // ry and pauli_rot rotation angle

  // pauli_rot: exp(-i angle/2 * P), P given by one X/Y/Z letter per qubit in
  // `targets` (same length, distinct qubits).
  std::string pauli;
  std::vector<int> targets;

  std::shared_ptr<const Gate> inner;  // controlled-wrapper payload

  static Gate ry(int target, double angle);
  static Gate h(int target);
  static Gate x(int target);
  static Gate cnot(int control, int target);
  static Gate pauli_rot(std::string pauli, std::vector<int> targets, double angle);
  static Gate controlled(Gate inner, int control);

  Gate adjoint() const;
};

// Prepares a real unit vector from |0...0> via a Householder reflection
// (orthogonal, symmetric, self-inverse). Used for vector-valued targets and
// for loading diagonal factors onto copy registers in the explicit
// Hadamard-test mode.
struct StatePrep {
  std::vector<double> state;
};

using CircuitOp = std::variant<Gate, StatePrep>;

struct Circuit {
  int n_qubits = 0;
  std::vector<CircuitOp> ops;
};

// Cyclic shift |k> -> |(k + direction) mod 2^n> on an n-qubit register.
struct AdderOp {
  int n_qubits = 0;
  int direction = +1;
};

// Real diagonal operator. Every entry must lie in [-1, 1] so that
// Hadamard-test probabilities stay valid.
struct DiagonalOp {
  std::vector<double> diag;
};

using MiddleOp = std::variant<AdderOp, DiagonalOp>;

}  // namespace sgeo
