#pragma once

// Hypergeometric-type forms of the second-order equations in the s variable.
//
// Dirac, q != 0:  s = 1/(1 + q e^{-alpha x}),  d/dx = alpha s(1-s) d/ds,
//   u'' + (1-2s)/(s-s^2) u' + [gamma^2 s^2 - (beta^2 + 2 gamma^2) s + beta^2 + gamma^2 - eps^2]/(s-s^2)^2 u = 0
//   eps^2 = a^2 (m^2 - E^2), beta^2 = a^2 V2/q, gamma^2 = a^2 V1/q^2,
//   V1 = V0^2 - i q V0 alpha, V2 = 2 E V0 + i V0 alpha.
// Dirac, q = 0:  s = e^{-alpha x},
//   u'' + u'/s + [-eps^2 + beta s + gamma s^2]/s^2 u = 0,
//   eps^2 = (m^2 - E^2)/alpha^2, beta = i V0/alpha + 2 E V0/alpha^2, gamma = V0^2/alpha^2.
// Schrodinger, trigonometric PT form (real a, m, q, V0 of the underlying spec):
//   sigma_tilde = -beta^2 s + beta^2 - eps^2, eps^2 = 2 m a^2 E, beta^2 = -2 m a^2 V0/q.

#include "nudirac/errors.hpp"
#include "nudirac/nu_core.hpp"
#include "nudirac/potential.hpp"

namespace nudirac {

struct DiracCoefficients {
  cplx eps2, beta2, gamma2;  // dimensionless
  cplx V1, V2;
};

inline DiracCoefficients dirac_coefficients(const PotentialSpec& spec, cplx E) {
  const cplx V0 = spec.V0(), q = spec.q(), al = spec.alpha(), a = spec.a();
  const double m = spec.m();
  if (q == 0.0) throw MisuseError("dirac_coefficients: q = 0 uses the exponential form");
  DiracCoefficients c;
  c.V1 = V0 * V0 - kI * q * V0 * al;
  c.V2 = 2.0 * E * V0 + kI * V0 * al;
  c.eps2 = a * a * (m * m - E * E);
  c.beta2 = a * a * c.V2 / q;
  c.gamma2 = a * a * c.V1 / (q * q);
  return c;
}

inline const Poly2 kJacobiSigma{0.0, 1.0, -1.0};    // s - s^2
inline const Poly2 kJacobiTauTilde{1.0, -2.0, 0.0};  // 1 - 2s

inline HypergeometricForm dirac_ws_form(const PotentialSpec& spec, cplx E) {
  const DiracCoefficients c = dirac_coefficients(spec, E);
  const Poly2 st{c.beta2 + c.gamma2 - c.eps2, -(c.beta2 + 2.0 * c.gamma2), c.gamma2};
  return {kJacobiSigma, kJacobiTauTilde, st};
}

struct ExponentialCoefficients {
  cplx eps2, beta, gamma, delta;  // delta = V0/alpha
};

inline ExponentialCoefficients exponential_coefficients(const PotentialSpec& spec, cplx E) {
  const cplx V0 = spec.V0(), al = spec.alpha();
  const double m = spec.m();
  return {(m * m - E * E) / (al * al), kI * V0 / al + 2.0 * E * V0 / (al * al), V0 * V0 / (al * al), V0 / al};
}

inline HypergeometricForm dirac_q0_form(const PotentialSpec& spec, cplx E) {
  const ExponentialCoefficients c = exponential_coefficients(spec, E);
  return {Poly2{0.0, 1.0, 0.0}, Poly2{1.0, 0.0, 0.0}, Poly2{-c.eps2, c.beta, c.gamma}};
}

struct SchrodingerCoefficients {
  cplx eps2, beta2;
};

inline SchrodingerCoefficients schrodinger_pt_coefficients(const PotentialSpec& spec, cplx E) {
  if (spec.variant() != Variant::PTTrig) throw MisuseError("Schrodinger trigonometric form needs a PTTrig spec");
  const PotentialSpec r = underlying_real(spec);
  const double a = r.a().real(), m = r.m(), q = r.q().real(), V0 = r.V0().real();
  return {2.0 * m * a * a * E, -2.0 * m * a * a * V0 / q};
}

inline HypergeometricForm schrodinger_pt_form(const PotentialSpec& spec, cplx E) {
  const SchrodingerCoefficients c = schrodinger_pt_coefficients(spec, E);
  return {kJacobiSigma, kJacobiTauTilde, Poly2{c.beta2 - c.eps2, -c.beta2, 0.0}};
}

}  // namespace nudirac
