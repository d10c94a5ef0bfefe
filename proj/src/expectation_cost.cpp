#include "sgeo/expectation_cost.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sgeo/state_vector.hpp"

namespace sgeo {

namespace {
constexpr double kPi = std::numbers::pi;
}

DenseObservable::DenseObservable(CMat mat, double scale) : mat_(std::move(mat)), scale_(scale) {
  if (scale_ <= 0.0) throw std::invalid_argument("observable scale must be positive");
  if (mat_max_abs_diff(mat_, mat_adjoint(mat_)) > 1e-12)
    throw std::invalid_argument("observable must be Hermitian");
}

cplx DenseObservable::exact_element(const Circuit& bra, const Circuit& ket) const {
  const StateVec b = run_circuit(bra);
  StateVec kv = run_circuit(ket);
  if (static_cast<int>(kv.dim()) != mat_.dim)
    throw std::invalid_argument("observable dimension mismatch");
  std::vector<cplx> ov(kv.dim(), cplx(0.0, 0.0));
  for (int r = 0; r < mat_.dim; ++r)
    for (int c = 0; c < mat_.dim; ++c) ov[static_cast<std::size_t>(r)] += mat_.at(r, c) * kv.amps[static_cast<std::size_t>(c)];
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < ov.size(); ++i) acc += std::conj(b.amps[i]) * ov[i];
  return acc;
}

RealEstimate DenseObservable::evaluate(const Circuit& bra, const Circuit& ket,
                                       Estimator& est) const {
  const double v = exact_element(bra, ket).real();
  RealEstimate r = est.measure_real(v / scale_);
  r.value *= scale_;
  r.std_error *= scale_;
  return r;
}

double direct_expectation(const ObservableEval& obs, const AnsatzSpec& spec,
                          const ParamVector& p, Estimator& est) {
  if (!obs.hermitian()) throw std::invalid_argument("observable must declare hermitian");
  const Circuit c = bind(spec, p);
  return obs.evaluate(c, c, est).value;
}

KappaCoeffs estimate_kappa(const ObservableEval& obs, const AnsatzSpec& spec,
                           const ParamVector& p, int j, Estimator& est) {
  if (!obs.hermitian()) throw std::invalid_argument("observable must declare hermitian");
  if (j < 0 || j >= p.size()) throw std::invalid_argument("parameter index out of range");
  const Circuit u0 = bind_fixed(spec, p, {{{j, 0.0}}});
  const Circuit up = bind_fixed(spec, p, {{{j, kPi}}});
  KappaCoeffs kc;
  kc.j = j;
  const RealEstimate r00 = obs.evaluate(u0, u0, est);
  const RealEstimate rpp = obs.evaluate(up, up, est);
  const RealEstimate r0p = obs.evaluate(u0, up, est);
  kc.k00 = r00.value;
  kc.kpp = rpp.value;
  kc.k0p = r0p.value;
  kc.e00 = r00.std_error;
  kc.epp = rpp.std_error;
  kc.e0p = r0p.std_error;
  return kc;
}

double expectation_curve(const KappaCoeffs& kc, double lambda) {
  const double c = std::cos(lambda / 2.0), s = std::sin(lambda / 2.0);
  return c * c * kc.k00 + s * s * kc.kpp + 2.0 * c * s * kc.k0p;
}

double expectation_derivative(const KappaCoeffs& kc, double lambda, int order) {
  if (order < 1 || order > 4) throw std::invalid_argument("derivative order must be 1..4");
  // harmonic form A + B cos(l) + C sin(l); derivatives shift the phase
  const double B = (kc.k00 - kc.kpp) / 2.0, C = kc.k0p;
  return B * std::cos(lambda + order * kPi / 2.0) + C * std::sin(lambda + order * kPi / 2.0);
}

KappaCoeffs harmonic_from_samples(double at0, double at_pi, double at_half_pi) {
  KappaCoeffs kc;
  const double A = (at0 + at_pi) / 2.0;
  kc.k00 = at0;
  kc.kpp = at_pi;
  kc.k0p = at_half_pi - A;
  return kc;
}

ZetaCoeffs estimate_zeta(const ObservableEval& obs, const AnsatzSpec& spec, const ParamVector& p,
                         int j, int k, Estimator& est) {
  if (!obs.hermitian()) throw std::invalid_argument("observable must declare hermitian");
  if (j == k) throw std::invalid_argument("surface estimation needs two distinct indices");
  if (j < 0 || j >= p.size() || k < 0 || k >= p.size())
    throw std::invalid_argument("parameter index out of range");
  const Circuit u00 = bind_fixed(spec, p, {{{j, 0.0}, {k, 0.0}}});
  const Circuit u0p = bind_fixed(spec, p, {{{j, 0.0}, {k, kPi}}});
  const Circuit up0 = bind_fixed(spec, p, {{{j, kPi}, {k, 0.0}}});
  const Circuit upp = bind_fixed(spec, p, {{{j, kPi}, {k, kPi}}});
  ZetaCoeffs z;
  z.j = j;
  z.k = k;
  z.z_00_00 = obs.evaluate(u00, u00, est).value;
  z.z_0p_0p = obs.evaluate(u0p, u0p, est).value;
  z.z_p0_p0 = obs.evaluate(up0, up0, est).value;
  z.z_pp_pp = obs.evaluate(upp, upp, est).value;
  z.z_00_0p = obs.evaluate(u00, u0p, est).value;
  z.z_p0_pp = obs.evaluate(up0, upp, est).value;
  z.z_00_p0 = obs.evaluate(u00, up0, est).value;
  z.z_0p_pp = obs.evaluate(u0p, upp, est).value;
  z.z_00_pp = obs.evaluate(u00, upp, est).value;
  z.z_0p_p0 = obs.evaluate(u0p, up0, est).value;
  return z;
}

double expectation_surface(const ZetaCoeffs& z, double lj, double lk) {
  const double cj = std::cos(lj / 2.0), sj = std::sin(lj / 2.0);
  const double ck = std::cos(lk / 2.0), sk = std::sin(lk / 2.0);
  return cj * cj * (ck * ck * z.z_00_00 + 2.0 * ck * sk * z.z_00_0p + sk * sk * z.z_0p_0p) +
         sj * sj * (sk * sk * z.z_pp_pp + 2.0 * ck * sk * z.z_p0_pp + ck * ck * z.z_p0_p0) +
         2.0 * cj * sj *
             (ck * ck * z.z_00_p0 + sk * sk * z.z_0p_pp + ck * sk * (z.z_00_pp + z.z_0p_p0));
}

}  // namespace sgeo
