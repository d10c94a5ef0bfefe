#include "sgeo/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sgeo/state_vector.hpp"

namespace sgeo {

ParamVector::ParamVector(std::vector<double> values, std::vector<std::vector<int>> tie_groups)
    : values_(std::move(values)), groups_(std::move(tie_groups)) {
  for (double& v : values_) v = wrap_angle(v);
  group_index_.assign(values_.size(), -1);
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    std::vector<int>& grp = groups_[g];
    if (grp.size() < 2) throw std::invalid_argument("tie group needs at least two members");
    std::sort(grp.begin(), grp.end());
    for (int idx : grp) {
      if (idx < 0 || idx >= size()) throw std::invalid_argument("tie group index out of range");
      if (group_index_[static_cast<std::size_t>(idx)] != -1)
        throw std::invalid_argument("tie groups must be disjoint");
      group_index_[static_cast<std::size_t>(idx)] = static_cast<int>(g);
    }
    // members share the leader's value from the start
    const double lead = values_[static_cast<std::size_t>(grp.front())];
    for (int idx : grp) values_[static_cast<std::size_t>(idx)] = lead;
  }
}

void ParamVector::set(int i, double v) {
  if (i < 0 || i >= size()) throw std::invalid_argument("parameter index out of range");
  const double w = wrap_angle(v);
  for (int idx : group_of(i)) values_[static_cast<std::size_t>(idx)] = w;
}

std::vector<int> ParamVector::group_of(int i) const {
  if (i < 0 || i >= size()) throw std::invalid_argument("parameter index out of range");
  const int g = group_index_[static_cast<std::size_t>(i)];
  if (g < 0) return {i};
  return groups_[static_cast<std::size_t>(g)];
}

bool ParamVector::is_group_leader(int i) const { return group_of(i).front() == i; }

namespace {

Circuit build(const AnsatzSpec& spec, const std::vector<double>& angles) {
  if (spec.n_qubits < 1) throw std::invalid_argument("ansatz needs at least one qubit");
  if (spec.depth < 0) throw std::invalid_argument("ansatz depth must be non-negative");
  Circuit c;
  c.n_qubits = spec.n_qubits;
  const int n = spec.n_qubits;
  for (int layer = 0; layer <= spec.depth; ++layer) {
    for (int q = 0; q < n; ++q)
      c.ops.push_back(Gate::ry(q, angles[static_cast<std::size_t>(layer * n + q)]));
    if (layer == spec.depth) break;
    for (int q = 0; q + 1 < n; ++q) c.ops.push_back(Gate::cnot(q, q + 1));
  }
  return c;
}

}  // namespace

Circuit bind(const AnsatzSpec& spec, const ParamVector& p) {
  if (p.size() != spec.param_count())
    throw std::invalid_argument("parameter count does not match ansatz");
  return build(spec, p.values());
}

namespace {

std::vector<double> real_amps(const Circuit& c) {
  StateVec s = run_circuit(c);
  std::vector<double> v(s.amps.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.amps[i].real();
  return v;
}

}  // namespace

std::vector<double> ansatz_state(const AnsatzSpec& spec, const ParamVector& p) {
  return real_amps(bind(spec, p));
}

std::vector<double> ansatz_state(const AnsatzSpec& spec, const ParamVector& p,
                                 const FixedAssignment& fix) {
  return real_amps(bind_fixed(spec, p, fix));
}

Circuit bind_fixed(const AnsatzSpec& spec, const ParamVector& p, const FixedAssignment& fix) {
  if (p.size() != spec.param_count())
    throw std::invalid_argument("parameter count does not match ansatz");
  std::vector<double> angles = p.values();
  std::vector<bool> seen(angles.size(), false);
  for (const auto& [idx, ang] : fix.fixes) {
    if (idx < 0 || idx >= p.size()) throw std::invalid_argument("fixed index out of range");
    if (seen[static_cast<std::size_t>(idx)])
      throw std::invalid_argument("fixed assignment collides with itself");
    seen[static_cast<std::size_t>(idx)] = true;
    // fixing angles are taken literally: a variant pinned at pi must apply
    // RY(pi), not RY(-pi), or the expansion picks up a sign flip
    angles[static_cast<std::size_t>(idx)] = ang;
  }
  return build(spec, angles);
}

LcuExpansion::LcuExpansion(AnsatzSpec spec, ParamVector base, std::vector<int> free_indices,
                           bool tied)
    : spec_(spec), base_(std::move(base)), free_(std::move(free_indices)), tied_(tied) {
  if (free_.empty()) throw std::invalid_argument("expansion needs at least one free index");
  if (free_.size() > 12) throw std::invalid_argument("expansion limited to 12 free parameters");
  for (int j : free_)
    if (j < 0 || j >= base_.size()) throw std::invalid_argument("free index out of range");
}

double LcuExpansion::coefficient(int term, std::span<const double> free_angles) const {
  if (term < 0 || term >= term_count()) throw std::invalid_argument("term index out of range");
  if (!tied_ && free_angles.size() != free_.size())
    throw std::invalid_argument("one angle per free index required");
  if (tied_ && free_angles.empty())
    throw std::invalid_argument("tied coefficient needs an angle");
  double c = 1.0;
  for (std::size_t l = 0; l < free_.size(); ++l) {
    const double lam = tied_ ? free_angles[0] : free_angles[l];
    const double fixed = (term >> l) & 1 ? std::numbers::pi : 0.0;
    c *= std::cos((lam - fixed) / 2.0);
  }
  return c;
}

FixedAssignment LcuExpansion::term_fixing(int term) const {
  if (term < 0 || term >= term_count()) throw std::invalid_argument("term index out of range");
  FixedAssignment fa;
  for (std::size_t l = 0; l < free_.size(); ++l)
    fa.fixes.emplace_back(free_[l], (term >> l) & 1 ? std::numbers::pi : 0.0);
  return fa;
}

Circuit LcuExpansion::term_circuit(int term) const {
  return bind_fixed(spec_, base_, term_fixing(term));
}

LcuExpansion lcu_single(const AnsatzSpec& spec, const ParamVector& p, int j) {
  if (p.size() != spec.param_count())
    throw std::invalid_argument("parameter count does not match ansatz");
  if (j < 0 || j >= p.size()) throw std::invalid_argument("parameter index out of range");
  return LcuExpansion(spec, p, {j}, false);
}

LcuExpansion lcu_pair(const AnsatzSpec& spec, const ParamVector& p, int j, int k) {
  if (p.size() != spec.param_count())
    throw std::invalid_argument("parameter count does not match ansatz");
  if (j == k) throw std::invalid_argument("pair expansion needs two distinct indices");
  if (j < 0 || j >= p.size() || k < 0 || k >= p.size())
    throw std::invalid_argument("parameter index out of range");
  const std::vector<int> gj = p.group_of(j);
  const bool tied = std::find(gj.begin(), gj.end(), k) != gj.end();
  std::vector<int> free{std::min(j, k), std::max(j, k)};
  return LcuExpansion(spec, p, std::move(free), tied);
}

LcuExpansion lcu_full(const AnsatzSpec& spec, const ParamVector& p) {
  if (p.size() != spec.param_count())
    throw std::invalid_argument("parameter count does not match ansatz");
  if (p.size() > 12)
    throw std::invalid_argument("full expansion limited to 12 parameters (2^m terms)");
  std::vector<int> free(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) free[static_cast<std::size_t>(i)] = i;
  return LcuExpansion(spec, p, std::move(free), false);
}

std::vector<WeightedOps> decompose_pauli_rot(const std::string& pauli,
                                             const std::vector<int>& targets, double angle) {
  for (char ch : pauli)
    if (ch != 'X' && ch != 'Y' && ch != 'Z')
      throw std::invalid_argument("malformed Pauli string: letters must be X, Y or Z");
  if (pauli.empty() || pauli.size() != targets.size())
    throw std::invalid_argument("malformed Pauli string: length mismatch");
  std::vector<WeightedOps> terms(2);
  terms[0].coeff = std::cos(angle / 2.0);
  terms[1].coeff = std::sin(angle / 2.0);
  terms[1].gates.push_back(Gate::pauli_rot(pauli, targets, std::numbers::pi));
  return terms;
}

std::vector<Gate> swap_rot_gates(bool plus_yy, int q0, int q1, double angle) {
  if (q0 == q1) throw std::invalid_argument("swap rotation needs two distinct qubits");
  return {Gate::pauli_rot("XX", {q0, q1}, angle),
          Gate::pauli_rot("YY", {q0, q1}, plus_yy ? angle : -angle)};
}

std::vector<WeightedOps> decompose_swap_rot(bool plus_yy, int q0, int q1, double angle) {
  const double c2 = std::cos(angle / 2.0) * std::cos(angle / 2.0);
  const double s2 = std::sin(angle / 2.0) * std::sin(angle / 2.0);
  const double sl = std::sin(angle);
  std::vector<WeightedOps> terms(3);
  terms[0].coeff = c2 - sl / 2.0;
  terms[0].gates = swap_rot_gates(plus_yy, q0, q1, 0.0);
  terms[1].coeff = s2 - sl / 2.0;
  terms[1].gates = swap_rot_gates(plus_yy, q0, q1, std::numbers::pi);
  terms[2].coeff = sl;
  terms[2].gates = swap_rot_gates(plus_yy, q0, q1, std::numbers::pi / 2.0);
  return terms;
}

}  // namespace sgeo
