#pragma once

#include "sgeo/circuit.hpp"

namespace sgeo {

// Small dense complex matrix, row-major. Only used at reconstruction-check
// scale (dim <= 2^5 or so), so no attempt at being clever.
struct CMat {
  int dim = 0;
  std::vector<cplx> a;

  static CMat zero(int dim);
  static CMat identity(int dim);
  cplx& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim + c]; }
  const cplx& at(int r, int c) const { return a[static_cast<std::size_t>(r) * dim + c]; }
};

CMat mat_mul(const CMat& x, const CMat& y);
CMat mat_add(const CMat& x, const CMat& y);
CMat mat_scale(const CMat& x, cplx s);
CMat mat_adjoint(const CMat& x);
double mat_max_abs_diff(const CMat& x, const CMat& y);

// Full unitary of a circuit, built by running it on every basis state.
CMat circuit_unitary(const Circuit& c);
CMat gate_unitary(const Gate& g, int n_qubits);
// Product of a middle chain as a matrix (first chain element rightmost).
CMat middle_matrix(const std::vector<MiddleOp>& middle, int n_qubits);

bool is_unitary(const CMat& u, double tol);

}  // namespace sgeo
