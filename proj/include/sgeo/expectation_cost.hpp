#pragma once

#include <memory>

#include "sgeo/ansatz.hpp"
#include "sgeo/dense.hpp"
#include "sgeo/estimator.hpp"

namespace sgeo {

// Contract for measuring Re{ <0| U_bra^dag O U_ket |0> } of a Hermitian
// observable. Implementations declare how many circuits one evaluation
// charges (application modules supply composite evaluators; the dense matrix
// one below exists for tests and validation).
class ObservableEval {
 public:
  virtual ~ObservableEval() = default;
  virtual bool hermitian() const { return true; }
  virtual int circuits_per_eval() const = 0;
  virtual RealEstimate evaluate(const Circuit& bra, const Circuit& ket, Estimator& est) const = 0;
};

// Dense Hermitian observable. `scale` must bound the spectral norm; sampled
// values are drawn at value/scale and rescaled, one circuit per evaluation.
class DenseObservable : public ObservableEval {
 public:
  DenseObservable(CMat mat, double scale);
  int circuits_per_eval() const override { return 1; }
  RealEstimate evaluate(const Circuit& bra, const Circuit& ket, Estimator& est) const override;
  // Exact complex matrix element <0|U_bra^dag O U_ket|0> (oracle use only,
  // charges nothing).
  cplx exact_element(const Circuit& bra, const Circuit& ket) const;

 private:
  CMat mat_;
  double scale_ = 1.0;
};

// Expectation cost C_O(params) = Re<0|U^dag O U|0>. The single-parameter
// section is C_O(l) = cos^2(l/2) k00 + sin^2(l/2) kpp + 2 cos(l/2) sin(l/2) k0p,
// an affine-harmonic A + B cos l + C sin l with A=(k00+kpp)/2, B=(k00-kpp)/2,
// C=k0p.
struct KappaCoeffs {
  int j = 0;
  double k00 = 0.0, kpp = 0.0, k0p = 0.0;
  double e00 = 0.0, epp = 0.0, e0p = 0.0;
};

// Two-parameter surface: ten independent reals (four diagonal, six real
// parts of cross terms), labels give the (j,k) fixings of bra then ket.
struct ZetaCoeffs {
  int j = 0, k = 0;
  double z_00_00 = 0.0, z_0p_0p = 0.0, z_p0_p0 = 0.0, z_pp_pp = 0.0;
  double z_00_0p = 0.0, z_p0_pp = 0.0, z_00_p0 = 0.0, z_0p_pp = 0.0;
  double z_00_pp = 0.0, z_0p_p0 = 0.0;
};

double direct_expectation(const ObservableEval& obs, const AnsatzSpec& spec,
                          const ParamVector& p, Estimator& est);

KappaCoeffs estimate_kappa(const ObservableEval& obs, const AnsatzSpec& spec,
                           const ParamVector& p, int j, Estimator& est);  // 3 evaluations
double expectation_curve(const KappaCoeffs& kc, double lambda);
double expectation_derivative(const KappaCoeffs& kc, double lambda, int order);

// Reconstruct the same harmonic from three direct curve samples at
// lambda = 0, pi, pi/2 (cross-check route).
KappaCoeffs harmonic_from_samples(double at0, double at_pi, double at_half_pi);

ZetaCoeffs estimate_zeta(const ObservableEval& obs, const AnsatzSpec& spec, const ParamVector& p,
                         int j, int k, Estimator& est);  // 10 evaluations
double expectation_surface(const ZetaCoeffs& zc, double lj, double lk);

}  // namespace sgeo
