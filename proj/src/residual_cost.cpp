#include "sgeo/residual_cost.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sgeo {

namespace {

constexpr double kPi = std::numbers::pi;

RealEstimate term_overlap(const Circuit& target, const AnsatzSpec& spec, const ParamVector& p,
                          const FixedAssignment& fix, Estimator& est) {
  return overlap_real(target, {}, bind_fixed(spec, p, fix), est);
}

// n-th derivative of cos((l - fixed)/2), fixed in {0, pi}
double dcos_half(double lambda, double fixed, int order) {
  return std::cos((lambda - fixed) / 2.0 + order * kPi / 2.0) / std::pow(2.0, order);
}

}  // namespace

double direct_residual(const Circuit& target, const AnsatzSpec& spec, const ParamVector& p,
                       Estimator& est) {
  const RealEstimate r = overlap_real(target, {}, bind(spec, p), est);
  return 2.0 * (1.0 - r.value);
}

AlphaCoeffs estimate_alpha(const Circuit& target, const AnsatzSpec& spec, const ParamVector& p,
                           int j, Estimator& est) {
  if (j < 0 || j >= p.size()) throw std::invalid_argument("parameter index out of range");
  AlphaCoeffs ac;
  ac.j = j;
  const RealEstimate r0 = term_overlap(target, spec, p, {{{j, 0.0}}}, est);
  const RealEstimate rp = term_overlap(target, spec, p, {{{j, kPi}}}, est);
  ac.a0 = r0.value;
  ac.api = rp.value;
  ac.a0_err = r0.std_error;
  ac.api_err = rp.std_error;
  return ac;
}

BetaCoeffs estimate_beta(const Circuit& target, const AnsatzSpec& spec, const ParamVector& p,
                         int j, int k, Estimator& est) {
  if (j == k) throw std::invalid_argument("surface estimation needs two distinct indices");
  if (j < 0 || j >= p.size() || k < 0 || k >= p.size())
    throw std::invalid_argument("parameter index out of range");
  BetaCoeffs bc;
  bc.j = j;
  bc.k = k;
  const RealEstimate r00 = term_overlap(target, spec, p, {{{j, 0.0}, {k, 0.0}}}, est);
  const RealEstimate r0p = term_overlap(target, spec, p, {{{j, 0.0}, {k, kPi}}}, est);
  const RealEstimate rp0 = term_overlap(target, spec, p, {{{j, kPi}, {k, 0.0}}}, est);
  const RealEstimate rpp = term_overlap(target, spec, p, {{{j, kPi}, {k, kPi}}}, est);
  bc.b00 = r00.value;
  bc.b0p = r0p.value;
  bc.bp0 = rp0.value;
  bc.bpp = rpp.value;
  bc.e00 = r00.std_error;
  bc.e0p = r0p.std_error;
  bc.ep0 = rp0.std_error;
  bc.epp = rpp.std_error;
  return bc;
}

GammaCoeffs estimate_gamma(const Circuit& target, const AnsatzSpec& spec, const ParamVector& p,
                           Estimator& est) {
  const LcuExpansion ex = lcu_full(spec, p);
  GammaCoeffs gc;
  gc.free_indices = ex.free_indices();
  gc.g.resize(static_cast<std::size_t>(ex.term_count()));
  gc.err.resize(static_cast<std::size_t>(ex.term_count()));
  for (int t = 0; t < ex.term_count(); ++t) {
    const RealEstimate r = overlap_real(target, {}, ex.term_circuit(t), est);
    gc.g[static_cast<std::size_t>(t)] = r.value;
    gc.err[static_cast<std::size_t>(t)] = r.std_error;
  }
  return gc;
}

double residual_curve(const AlphaCoeffs& ac, double lambda) {
  return 2.0 * (1.0 - std::cos(lambda / 2.0) * ac.a0 - std::sin(lambda / 2.0) * ac.api);
}

double residual_derivative(const AlphaCoeffs& ac, double lambda, int order) {
  if (order < 1 || order > 4) throw std::invalid_argument("derivative order must be 1..4");
  return -2.0 * (dcos_half(lambda, 0.0, order) * ac.a0 + dcos_half(lambda, kPi, order) * ac.api);
}

double residual_surface(const BetaCoeffs& bc, double lj, double lk) {
  const double cj = std::cos(lj / 2.0), sj = std::sin(lj / 2.0);
  const double ck = std::cos(lk / 2.0), sk = std::sin(lk / 2.0);
  return 2.0 * (1.0 - cj * ck * bc.b00 - cj * sk * bc.b0p - sj * ck * bc.bp0 - sj * sk * bc.bpp);
}

double residual_mixed_derivative(const BetaCoeffs& bc, double lj, double lk, int oj, int ok) {
  if (oj < 0 || ok < 0 || oj + ok < 1 || oj > 4 || ok > 4)
    throw std::invalid_argument("derivative orders must be in 0..4 with at least one positive");
  const double cj0 = dcos_half(lj, 0.0, oj), cjp = dcos_half(lj, kPi, oj);
  const double ck0 = dcos_half(lk, 0.0, ok), ckp = dcos_half(lk, kPi, ok);
  return -2.0 * (cj0 * ck0 * bc.b00 + cj0 * ckp * bc.b0p + cjp * ck0 * bc.bp0 + cjp * ckp * bc.bpp);
}

double residual_tied_curve(const BetaCoeffs& bc, double lambda) {
  return residual_surface(bc, lambda, lambda);
}

double residual_full(const GammaCoeffs& gc, const std::vector<double>& lambdas) {
  const std::size_t m = gc.free_indices.size();
  if (lambdas.size() != m) throw std::invalid_argument("one angle per free index required");
  double acc = 0.0;
  for (std::size_t t = 0; t < gc.g.size(); ++t) {
    double c = 1.0;
    for (std::size_t l = 0; l < m; ++l) {
      const double fixed = (t >> l) & 1 ? kPi : 0.0;
      c *= std::cos((lambdas[l] - fixed) / 2.0);
    }
    acc += c * gc.g[t];
  }
  return 2.0 * (1.0 - acc);
}

}  // namespace sgeo
