#include "sgeo/dense.hpp"

#include <cmath>
#include <stdexcept>

#include "sgeo/state_vector.hpp"

namespace sgeo {

CMat CMat::zero(int dim) {
  CMat m;
  m.dim = dim;
  m.a.assign(static_cast<std::size_t>(dim) * dim, cplx(0.0, 0.0));
  return m;
}

CMat CMat::identity(int dim) {
  CMat m = zero(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

CMat mat_mul(const CMat& x, const CMat& y) {
  if (x.dim != y.dim) throw std::invalid_argument("mat_mul: dimension mismatch");
  CMat r = CMat::zero(x.dim);
  for (int i = 0; i < x.dim; ++i)
    for (int k = 0; k < x.dim; ++k) {
      const cplx v = x.at(i, k);
      if (v == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < x.dim; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

CMat mat_add(const CMat& x, const CMat& y) {
  if (x.dim != y.dim) throw std::invalid_argument("mat_add: dimension mismatch");
  CMat r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

CMat mat_scale(const CMat& x, cplx s) {
  CMat r = x;
  for (cplx& v : r.a) v *= s;
  return r;
}

CMat mat_adjoint(const CMat& x) {
  CMat r = CMat::zero(x.dim);
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < x.dim; ++j) r.at(i, j) = std::conj(x.at(j, i));
  return r;
}

double mat_max_abs_diff(const CMat& x, const CMat& y) {
  if (x.dim != y.dim) throw std::invalid_argument("mat_max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

CMat circuit_unitary(const Circuit& c) {
  const std::size_t d = std::size_t{1} << c.n_qubits;
  CMat u = CMat::zero(static_cast<int>(d));
  for (std::size_t b = 0; b < d; ++b) {
    StateVec s;
    s.n_qubits = c.n_qubits;
    s.amps.assign(d, cplx(0.0, 0.0));
    s.amps[b] = 1.0;
    for (const CircuitOp& op : c.ops) apply(s, op);
    for (std::size_t r = 0; r < d; ++r) u.at(static_cast<int>(r), static_cast<int>(b)) = s.amps[r];
  }
  return u;
}

CMat gate_unitary(const Gate& g, int n_qubits) {
  Circuit c;
  c.n_qubits = n_qubits;
  c.ops.push_back(g);
  return circuit_unitary(c);
}

CMat middle_matrix(const std::vector<MiddleOp>& middle, int n_qubits) {
  const std::size_t d = std::size_t{1} << n_qubits;
  CMat m = CMat::identity(static_cast<int>(d));
  for (const MiddleOp& op : middle) {
    CMat f = CMat::zero(static_cast<int>(d));
    if (std::holds_alternative<AdderOp>(op)) {
      const AdderOp& a = std::get<AdderOp>(op);
      if ((std::size_t{1} << a.n_qubits) != d)
        throw std::invalid_argument("middle_matrix: adder register size mismatch");
      for (std::size_t k = 0; k < d; ++k)
        f.at(static_cast<int>((k + d + static_cast<std::size_t>(a.direction)) & (d - 1)),
             static_cast<int>(k)) = 1.0;
    } else {
      const DiagonalOp& dg = std::get<DiagonalOp>(op);
      if (dg.diag.size() != d)
        throw std::invalid_argument("middle_matrix: diagonal size mismatch");
      for (std::size_t k = 0; k < d; ++k) f.at(static_cast<int>(k), static_cast<int>(k)) = dg.diag[k];
    }
    m = mat_mul(f, m);  // chain element applied after what came before
  }
  return m;
}

bool is_unitary(const CMat& u, double tol) {
  return mat_max_abs_diff(mat_mul(mat_adjoint(u), u), CMat::identity(u.dim)) <= tol;
}

}  // namespace sgeo
