#include "sgeo/state_vector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sgeo {

namespace {

void check_qubit(const StateVec& s, int q, const char* what) {
  if (q < 0 || q >= s.n_qubits)
    throw std::invalid_argument(std::string(what) + " qubit index out of range");
}

bool mask_ok(std::size_t idx, std::uint64_t mask) { return (idx & mask) == mask; }

// Generic real 2x2 on `target` (absolute index), restricted by control mask.
void apply_2x2(StateVec& s, int target, double a, double b, double c, double d,
               std::uint64_t mask) {
  const std::size_t bit = std::size_t{1} << target;
  const std::size_t n = s.dim();
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & bit) || !mask_ok(i, mask)) continue;
    const std::size_t j = i | bit;
    const cplx v0 = s.amps[i], v1 = s.amps[j];
    s.amps[i] = a * v0 + b * v1;
    s.amps[j] = c * v0 + d * v1;
  }
}

void apply_pauli_rot(StateVec& s, const Gate& g, int offset, std::uint64_t mask) {
  if (g.pauli.empty() || g.pauli.size() != g.targets.size())
    throw std::invalid_argument("malformed Pauli string: length mismatch");
  std::size_t flip = 0;
  std::size_t ymask = 0, zmask = 0;
  std::uint64_t seen = 0;
  for (std::size_t k = 0; k < g.pauli.size(); ++k) {
    const int q = g.targets[k] + offset;
    check_qubit(s, q, "pauli_rot");
    const std::uint64_t qb = std::uint64_t{1} << q;
    if (seen & qb) throw std::invalid_argument("malformed Pauli string: repeated qubit");
    seen |= qb;
    switch (g.pauli[k]) {
      case 'X': flip |= qb; break;
      case 'Y': flip |= qb; ymask |= qb; break;
      case 'Z': zmask |= qb; break;
      default: throw std::invalid_argument("malformed Pauli string: letters must be X, Y or Z");
    }
  }
  const double co = std::cos(g.angle / 2), si = std::sin(g.angle / 2);
  const std::size_t n = s.dim();
  // phase(i) for P|i> = phase * |i ^ flip>:
  //   X: 1;  Y: i|1> from |0>, -i|0> from |1>;  Z: (-1)^bit
  auto phase = [&](std::size_t i) {
    int ycount = 0, yneg = 0, zneg = 0;
    for (std::size_t qb = ymask; qb; qb &= qb - 1) {
      ++ycount;
      if (i & (qb & ~(qb - 1))) ++yneg;
    }
    for (std::size_t qb = zmask; qb; qb &= qb - 1)
      if (i & (qb & ~(qb - 1))) ++zneg;
    // each Y contributes i (bit 0) or -i (bit 1)
    cplx ph(1.0, 0.0);
    switch (ycount % 4) {
      case 0: ph = {1, 0}; break;
      case 1: ph = {0, 1}; break;
      case 2: ph = {-1, 0}; break;
      case 3: ph = {0, -1}; break;
    }
    if ((yneg + zneg) % 2) ph = -ph;
    return ph;
  };
  if (flip == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!mask_ok(i, mask)) continue;
      s.amps[i] *= (co - cplx(0, 1) * si * phase(i));
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i ^ flip;
    if (i >= j || !mask_ok(i, mask)) continue;
    const cplx vi = s.amps[i], vj = s.amps[j];
    s.amps[i] = co * vi - cplx(0, 1) * si * phase(j) * vj;
    s.amps[j] = co * vj - cplx(0, 1) * si * phase(i) * vi;
  }
}

}  // namespace

StateVec StateVec::zero(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 24) throw std::invalid_argument("qubit count out of range");
  StateVec s;
  s.n_qubits = n_qubits;
  s.amps.assign(std::size_t{1} << n_qubits, cplx(0.0, 0.0));
  s.amps[0] = 1.0;
  return s;
}

double StateVec::norm() const {
  double n2 = 0.0;
  for (const cplx& a : amps) n2 += std::norm(a);
  return std::sqrt(n2);
}

void apply_shifted(StateVec& s, const Gate& g, int offset, std::uint64_t mask) {
  switch (g.kind) {
    case Gate::Kind::ry: {
      const int t = g.target + offset;
      check_qubit(s, t, "ry");
      const double c = std::cos(g.angle / 2), si = std::sin(g.angle / 2);
      apply_2x2(s, t, c, -si, si, c, mask);
      return;
    }
    case Gate::Kind::h: {
      const int t = g.target + offset;
      check_qubit(s, t, "h");
      const double r = 1.0 / std::numbers::sqrt2;
      apply_2x2(s, t, r, r, r, -r, mask);
      return;
    }
    case Gate::Kind::x: {
      const int t = g.target + offset;
      check_qubit(s, t, "x");
      apply_2x2(s, t, 0, 1, 1, 0, mask);
      return;
    }
    case Gate::Kind::cnot: {
      const int c = g.control + offset, t = g.target + offset;
      check_qubit(s, c, "cnot");
      check_qubit(s, t, "cnot");
      if (c == t) throw std::invalid_argument("cnot control equals target");
      const std::size_t cb = std::size_t{1} << c, tb = std::size_t{1} << t;
      const std::size_t n = s.dim();
      for (std::size_t i = 0; i < n; ++i) {
        if (!(i & cb) || (i & tb) || !mask_ok(i, mask)) continue;
        std::swap(s.amps[i], s.amps[i | tb]);
      }
      return;
    }
    case Gate::Kind::pauli_rot:
      apply_pauli_rot(s, g, offset, mask);
      return;
    case Gate::Kind::controlled: {
      if (!g.inner) throw std::invalid_argument("controlled gate without payload");
      const int c = g.control + offset;
      check_qubit(s, c, "controlled");
      apply_shifted(s, *g.inner, offset, mask | (std::uint64_t{1} << c));
      return;
    }
  }
  throw std::logic_error("unhandled gate kind");
}

void apply_shifted(StateVec& s, const StatePrep& p, int offset, std::uint64_t mask) {
  const std::size_t d = p.state.size();
  int k = 0;
  while ((std::size_t{1} << k) < d) ++k;
  if ((std::size_t{1} << k) != d || d < 2)
    throw std::invalid_argument("state_prep vector length must be a power of two");
  if (offset < 0 || offset + k > s.n_qubits)
    throw std::invalid_argument("state_prep register out of range");
  double n2 = 0.0;
  for (double v : p.state) n2 += v * v;
  if (std::abs(n2 - 1.0) > 1e-9)
    throw std::invalid_argument("state_prep vector is not normalized");
  if (mask & (((std::uint64_t{1} << k) - 1) << offset))
    throw std::invalid_argument("state_prep control overlaps its register");

  // Householder: Hv = v - 2 w (w.v)/(w.w), w = state - e0, H e0 = state.
  std::vector<double> w(p.state);
  w[0] -= 1.0;
  double ww = 0.0;
  for (double v : w) ww += v * v;

  const std::size_t lowN = std::size_t{1} << offset;
  const std::size_t n = s.dim();
  std::vector<cplx> x(d);
  for (std::size_t hi = 0; hi < n; hi += (d << offset)) {
    for (std::size_t lo = 0; lo < lowN; ++lo) {
      const std::size_t base = hi + lo;
      if (!mask_ok(base, mask)) continue;
      if (ww < 1e-30) continue;  // state == e0, identity
      cplx wx(0.0, 0.0);
      for (std::size_t r = 0; r < d; ++r) {
        x[r] = s.amps[base + (r << offset)];
        wx += w[r] * x[r];
      }
      const cplx f = 2.0 * wx / ww;
      for (std::size_t r = 0; r < d; ++r) s.amps[base + (r << offset)] = x[r] - f * w[r];
    }
  }
}

void apply_shifted(StateVec& s, const AdderOp& a, int offset, std::uint64_t mask) {
  if (a.n_qubits < 1) throw std::invalid_argument("adder register size must be positive");
  if (a.direction != 1 && a.direction != -1)
    throw std::invalid_argument("adder direction must be +1 or -1");
  const std::size_t d = std::size_t{1} << a.n_qubits;
  if (offset < 0 || offset + a.n_qubits > s.n_qubits)
    throw std::invalid_argument("adder register out of range");
  if (mask & ((d - 1) << offset))
    throw std::invalid_argument("adder control overlaps its register");
  const std::size_t lowN = std::size_t{1} << offset;
  const std::size_t n = s.dim();
  std::vector<cplx> x(d);
  for (std::size_t hi = 0; hi < n; hi += (d << offset)) {
    for (std::size_t lo = 0; lo < lowN; ++lo) {
      const std::size_t base = hi + lo;
      if (!mask_ok(base, mask)) continue;
      for (std::size_t r = 0; r < d; ++r) x[r] = s.amps[base + (r << offset)];
      for (std::size_t r = 0; r < d; ++r) {
        const std::size_t dst = (r + d + static_cast<std::size_t>(a.direction)) & (d - 1);
        s.amps[base + (dst << offset)] = x[r];
      }
    }
  }
}

void apply_shifted(StateVec& s, const DiagonalOp& dop, int offset, std::uint64_t mask) {
  const std::size_t d = dop.diag.size();
  int k = 0;
  while ((std::size_t{1} << k) < d) ++k;
  if ((std::size_t{1} << k) != d || d < 2)
    throw std::invalid_argument("diagonal length must be a power of two");
  if (offset < 0 || offset + k > s.n_qubits)
    throw std::invalid_argument("diagonal register out of range");
  for (double v : dop.diag)
    if (std::abs(v) > 1.0 + 1e-12)
      throw std::invalid_argument("diagonal entry exceeds 1 (unnormalized diagonal)");
  const std::size_t n = s.dim();
  const std::size_t fieldmask = (d - 1) << offset;
  for (std::size_t i = 0; i < n; ++i) {
    if (!mask_ok(i, mask)) continue;
    s.amps[i] *= dop.diag[(i & fieldmask) >> offset];
  }
}

void apply(StateVec& s, const Gate& g) { apply_shifted(s, g, 0); }
void apply(StateVec& s, const StatePrep& p) { apply_shifted(s, p, 0); }
void apply(StateVec& s, const AdderOp& a) { apply_shifted(s, a, 0); }
void apply(StateVec& s, const DiagonalOp& d) { apply_shifted(s, d, 0); }

void apply(StateVec& s, const CircuitOp& op) {
  std::visit([&](const auto& o) { apply(s, o); }, op);
}

void apply(StateVec& s, const MiddleOp& op) {
  std::visit([&](const auto& o) { apply(s, o); }, op);
}

StateVec run_circuit(const Circuit& c) {
  StateVec s = StateVec::zero(c.n_qubits);
  for (const CircuitOp& op : c.ops) apply(s, op);
  return s;
}

cplx inner(const StateVec& a, const StateVec& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amps[i]) * b.amps[i];
  return acc;
}

double wrap_angle(double x) {
  const double two_pi = 2.0 * std::numbers::pi;
  double y = std::fmod(x + std::numbers::pi, two_pi);
  if (y < 0) y += two_pi;
  return y - std::numbers::pi;
}

Gate Gate::ry(int target, double angle) {
  Gate g;
  g.kind = Kind::ry;
  g.target = target;
  g.angle = angle;
  return g;
}

Gate Gate::h(int target) {
  Gate g;
  g.kind = Kind::h;
  g.target = target;
  return g;
}

Gate Gate::x(int target) {
  Gate g;
  g.kind = Kind::x;
  g.target = target;
  return g;
}

Gate Gate::cnot(int control, int target) {
  Gate g;
  g.kind = Kind::cnot;
  g.control = control;
  g.target = target;
  return g;
}

Gate Gate::pauli_rot(std::string pauli, std::vector<int> targets, double angle) {
  Gate g;
  g.kind = Kind::pauli_rot;
  g.pauli = std::move(pauli);
  g.targets = std::move(targets);
  g.angle = angle;
  return g;
}

Gate Gate::controlled(Gate inner, int control) {
  Gate g;
  g.kind = Kind::controlled;
  g.control = control;
  g.inner = std::make_shared<const Gate>(std::move(inner));
  return g;
}

Gate Gate::adjoint() const {
  Gate g = *this;
  switch (kind) {
    case Kind::ry:
    case Kind::pauli_rot:
      g.angle = -angle;
      break;
    case Kind::h:
    case Kind::x:
    case Kind::cnot:
      break;
    case Kind::controlled:
      g.inner = std::make_shared<const Gate>(inner->adjoint());
      break;
  }
  return g;
}

}  // namespace sgeo
