#pragma once

#include <span>

#include "sgeo/circuit.hpp"

namespace sgeo {

// Real-amplitude ansatz: depth entangling blocks, each an RY column followed
// by a CNOT ladder (control i -> target i+1, no wraparound), then one final
// RY column. Parameter index = layer * n_qubits + qubit (layer-major).
struct AnsatzSpec {
  int n_qubits = 1;
  int depth = 1;
  int param_count() const { return n_qubits * (depth + 1); }
};

// Angles, always reduced into [-pi, pi). Optional tie groups force member
// parameters to share one value; any set() propagates across the group.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::vector<double> values,
                       std::vector<std::vector<int>> tie_groups = {});

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_.at(static_cast<std::size_t>(i)); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::vector<int>>& tie_groups() const { return groups_; }

  void set(int i, double v);              // wraps, propagates to the tie group
  std::vector<int> group_of(int i) const; // ascending; {i} when untied
  bool is_group_leader(int i) const;      // smallest member (or untied)

 private:
  std::vector<double> values_;
  std::vector<std::vector<int>> groups_;
  std::vector<int> group_index_;  // -1 when untied
};

struct FixedAssignment {
  std::vector<std::pair<int, double>> fixes;  // (parameter index, angle)
};

Circuit bind(const AnsatzSpec& spec, const ParamVector& p);
Circuit bind_fixed(const AnsatzSpec& spec, const ParamVector& p, const FixedAssignment& fix);

// Amplitudes of the bound ansatz on |0...0>; real by construction (RY/CNOT).
std::vector<double> ansatz_state(const AnsatzSpec& spec, const ParamVector& p);
std::vector<double> ansatz_state(const AnsatzSpec& spec, const ParamVector& p,
                                 const FixedAssignment& fix);

// Expansion of the bound ansatz over fixed-angle variants of the free
// parameters: U = sum_k coeff_k(free angles) * U^{pattern_k}, where pattern
// bit l of term k fixes free index l at pi (0 otherwise) and
// coeff_k = prod_l cos((lambda_l - pattern_l)/2).
class LcuExpansion {
 public:
  LcuExpansion(AnsatzSpec spec, ParamVector base, std::vector<int> free_indices, bool tied);

  int term_count() const { return 1 << static_cast<int>(free_.size()); }
  const std::vector<int>& free_indices() const { return free_; }
  bool tied() const { return tied_; }

  // One angle per free index; the tied form evaluates all slots at the same
  // angle, so a single-element span is accepted there as well.
  double coefficient(int term, std::span<const double> free_angles) const;
  Circuit term_circuit(int term) const;
  FixedAssignment term_fixing(int term) const;

 private:
  AnsatzSpec spec_;
  ParamVector base_;
  std::vector<int> free_;
  bool tied_ = false;
};

LcuExpansion lcu_single(const AnsatzSpec& spec, const ParamVector& p, int j);
// j != k required; produces the tied (jointly varying) form when j and k
// share a tie group.
LcuExpansion lcu_pair(const AnsatzSpec& spec, const ParamVector& p, int j, int k);
// All parameters free; limited to param_count <= 12 (2^m terms).
LcuExpansion lcu_full(const AnsatzSpec& spec, const ParamVector& p);

// Fixed-angle decompositions of standalone rotation gates.
struct WeightedOps {
  double coeff = 0.0;
  std::vector<Gate> gates;  // empty = identity
};

// exp(-i angle/2 P) = cos(angle/2) I + sin(angle/2) exp(-i pi/2 P)
std::vector<WeightedOps> decompose_pauli_rot(const std::string& pauli,
                                             const std::vector<int>& targets, double angle);

// Parameterized swap family exp(-i angle/2 (XX +/- YY)); plus_yy=true gives
// the variant whose angle-pi point is +ZZ, plus_yy=false the -ZZ one.
std::vector<Gate> swap_rot_gates(bool plus_yy, int q0, int q1, double angle);
// Three-term decomposition over the angle-{0, pi, pi/2} variants.
std::vector<WeightedOps> decompose_swap_rot(bool plus_yy, int q0, int q1, double angle);

}  // namespace sgeo
