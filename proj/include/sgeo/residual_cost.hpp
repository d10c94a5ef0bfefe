#pragma once

#include "sgeo/ansatz.hpp"
#include "sgeo/estimator.hpp"

namespace sgeo {

// Residual cost against a target preparation circuit:
//   C_I = 2 [ 1 - Re<0| U_target^dag U(params) |0> ],  range [0, 4].
// The single-parameter section reconstructs exactly from the two fixed-angle
// overlaps below as C_I(l) = 2 [1 - cos(l/2) a0 - sin(l/2) api].

struct AlphaCoeffs {
  int j = 0;
  double a0 = 0.0, api = 0.0;          // overlaps at lambda_j = 0 and pi
  double a0_err = 0.0, api_err = 0.0;  // standard errors (0 in exact mode)
};

struct BetaCoeffs {
  int j = 0, k = 0;
  // b[jk] with first letter = lambda_j fixing, second = lambda_k fixing
  double b00 = 0.0, b0p = 0.0, bp0 = 0.0, bpp = 0.0;
  double e00 = 0.0, e0p = 0.0, ep0 = 0.0, epp = 0.0;
};

struct GammaCoeffs {
  std::vector<int> free_indices;  // ascending, the whole parameter set
  std::vector<double> g;          // 2^m overlaps, bit l of the index = free l at pi
  std::vector<double> err;
};

double direct_residual(const Circuit& target, const AnsatzSpec& spec, const ParamVector& p,
                       Estimator& est);  // 1 circuit

AlphaCoeffs estimate_alpha(const Circuit& target, const AnsatzSpec& spec, const ParamVector& p,
                           int j, Estimator& est);  // 2 circuits
BetaCoeffs estimate_beta(const Circuit& target, const AnsatzSpec& spec, const ParamVector& p,
                         int j, int k, Estimator& est);  // 4 circuits
GammaCoeffs estimate_gamma(const Circuit& target, const AnsatzSpec& spec, const ParamVector& p,
                           Estimator& est);  // 2^m circuits, m <= 12

double residual_curve(const AlphaCoeffs& ac, double lambda);
// d^order/dlambda^order of the curve via the phase-shift closed form
//   d^n cos(l/2) = cos(l/2 + n pi/2) / 2^n  (orders 1..4 supported).
double residual_derivative(const AlphaCoeffs& ac, double lambda, int order);

double residual_surface(const BetaCoeffs& bc, double lj, double lk);
double residual_mixed_derivative(const BetaCoeffs& bc, double lj, double lk, int oj, int ok);
// The section along lambda_j = lambda_k = lambda (tied pair).
double residual_tied_curve(const BetaCoeffs& bc, double lambda);

double residual_full(const GammaCoeffs& gc, const std::vector<double>& lambdas);

}  // namespace sgeo
