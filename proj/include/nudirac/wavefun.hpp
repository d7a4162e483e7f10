#pragma once

// Spinor components in the s variable.
//   u(s) = N s^{e0} (1-s)^{e1} P_n^{(2 e0, 2 e1)}(1 - 2s)
//   m w  = i du/dx + (E + V0 (1-s)/q) u,   d/dx = alpha s(1-s) d/ds
// and the q = 0 confluent solution
//   u(s) = 1F1(eps + 1/2 + i beta alpha/(2 V0); 1 + 2 eps; 2 i V0 s/alpha) s^eps e^{-i V0 s/alpha}.

#include <cmath>
#include <vector>

#include "nudirac/equations.hpp"
#include "nudirac/errors.hpp"
#include "nudirac/spectrum.hpp"
#include "nudirac/specfun.hpp"

namespace nudirac {

/// s^{e0}(1-s)^{e1} P_n^{(2e0,2e1)}(1-2s) with normalization N.
struct JacobiWave {
  int n = 0;
  cplx exp0{}, exp1{};
  cplx N = 1.0;

  JacobiParams params() const { return {n, 2.0 * exp0, 2.0 * exp1}; }
};

struct WaveDerivs {
  cplx u, du, d2u;  // s-derivatives
};

namespace detail {

inline void check_boundary(const JacobiWave& w, cplx s) {
  if ((s == 0.0 && w.exp0.real() <= 0.0) || (s == 1.0 && w.exp1.real() <= 0.0))
    throw DomainError("wavefunction evaluated at an endpoint with nonpositive exponent");
}

}  // namespace detail

inline cplx jacobi_wave(const JacobiWave& w, cplx s) {
  detail::check_boundary(w, s);
  if (s == 0.0 || s == 1.0) return 0.0;
  return w.N * std::pow(s, w.exp0) * std::pow(1.0 - s, w.exp1) * jacobi_sum(w.params(), 1.0 - 2.0 * s);
}

/// Value and analytic first and second s-derivatives, from term-wise differentiation
/// of the Jacobi sum.
inline WaveDerivs jacobi_wave_derivs(const JacobiWave& w, cplx s) {
  detail::check_boundary(w, s);
  const cplx t = 1.0 - s;
  const cplx phi = w.N * std::pow(s, w.exp0) * std::pow(t, w.exp1);
  const cplx g = w.exp0 / s - w.exp1 / t;                   // phi'/phi
  const cplx gp = -w.exp0 / (s * s) - w.exp1 / (t * t);    // (phi'/phi)'
  const JacobiDerivs P = jacobi_sum_derivs(w.params(), 1.0 - 2.0 * s);
  const cplx dP = -2.0 * P.dp, d2P = 4.0 * P.d2p;
  return {phi * P.p, phi * (g * P.p + dP), phi * ((g * g + gp) * P.p + 2.0 * g * dP + d2P)};
}

// ---------------------------------------------------------------------------
// Normalization: 1 = N^2 int_0^1 s^{2 e0} (1-s)^{2 e1} [P_n^{(2e0,2e1)}(1-2s)]^2 ds
// (bilinear, no complex conjugation), expanded as a double sum over the
// s^{n-p}(1-s)^p and s^r forms of the Jacobi polynomial.

/// I(p, r) = int_0^1 s^{n + 2e0 + r - p} (1-s)^{p + 2 e1} ds, closed Gamma-ratio form
/// Gamma(a0 + 1) Gamma(p + 2 e1 + 1) / (a0 Gamma(n + 2 e1 + r + 2 e0 + 2)), a0 = n + 2 e0 + r - p + 1.
inline cplx integral_I(int n, cplx e0, cplx e1, int p, int r) {
  const cplx a0 = static_cast<double>(n + r - p + 1) + 2.0 * e0;
  if (a0.real() <= 0.0 || (static_cast<double>(p) + 2.0 * e1).real() <= -1.0)
    throw NonNormalizableError("I(p,r): integral diverges at an endpoint");
  return std::exp(clgamma(a0 + 1.0) + clgamma(static_cast<double>(p) + 2.0 * e1 + 1.0) - std::log(a0) -
                  clgamma(static_cast<double>(n + r + 2) + 2.0 * e1 + 2.0 * e0));
}

/// Same integral via Gauss summation: 2F1(a0, -p - 2 e1; a0 + 1; 1) / a0.
inline cplx integral_I_gauss(int n, cplx e0, cplx e1, int p, int r) {
  const cplx a0 = static_cast<double>(n + r - p + 1) + 2.0 * e0;
  return gauss_2f1(a0, -static_cast<double>(p) - 2.0 * e1, a0 + 1.0, 1.0) / a0;
}

/// Same integral by quadrature.
inline cplx integral_I_quadrature(int n, cplx e0, cplx e1, int p, int r) {
  const cplx p0 = static_cast<double>(n + r - p) + 2.0 * e0, p1 = static_cast<double>(p) + 2.0 * e1;
  return quad01_weighted([](double) { return cplx(1.0); }, p0, p1).value;
}

/// 2F1(a0, b0; a0 + 1; z) B(a0, 1): the Euler-integral form int_0^1 s^{a0-1} (1 - z s)^{-b0} ds.
/// At z = 1 it equals I(p, r); the trigonometric and non-PT variants print it with z = i,
/// where it is a different integral.
inline cplx euler_integral_2f1(cplx a0, cplx b0, cplx z) { return gauss_2f1(a0, b0, a0 + 1.0, z) * cbeta(a0, 1.0); }

/// N^{-2} from the double sum with the closed-form I(p, r).
inline cplx inverse_norm_squared(int n, cplx e0, cplx e1) {
  if ((2.0 * e0).real() <= -1.0 || (2.0 * e1).real() <= -1.0)
    throw NonNormalizableError("exponents are not square-integrable at an endpoint");
  const JacobiParams jp{n, 2.0 * e0, 2.0 * e1};
  const auto A = jacobi_coeffs_mixed(jp);
  const auto B = jacobi_coeffs_power(jp);
  CompensatedSum acc;
  for (int p = 0; p <= n; ++p)
    for (int r = 0; r <= n; ++r) acc.add(A[p] * B[r] * integral_I(n, e0, e1, p, r));
  return acc.value();
}

/// N^{-2} by direct quadrature of s^{2 e0}(1-s)^{2 e1} P^2.
inline cplx inverse_norm_squared_quadrature(int n, cplx e0, cplx e1) {
  const JacobiParams jp{n, 2.0 * e0, 2.0 * e1};
  return quad01_weighted(
             [&](double s) {
               const cplx P = jacobi_sum(jp, 1.0 - 2.0 * s);
               return P * P;
             },
             2.0 * e0, 2.0 * e1)
      .value;
}

/// N = (N^{-2})^{-1/2}, principal root.
inline cplx normalization(int n, cplx e0, cplx e1) { return 1.0 / std::sqrt(inverse_norm_squared(n, e0, e1)); }

// ---------------------------------------------------------------------------
// Dirac spinor states (q != 0).

struct SpinorState {
  PotentialSpec spec;
  EnergyLevel level;
  JacobiWave wave;
  bool normalized = false;  // false: N = 1 because the state is not square-integrable

  cplx N() const { return wave.N; }
};

inline SpinorState make_spinor_state(const PotentialSpec& spec, const EnergyLevel& level) {
  SpinorState st{spec, level, {level.n, level.exp0, level.exp1, 1.0}, false};
  try {
    st.wave.N = normalization(level.n, level.exp0, level.exp1);
    st.normalized = true;
  } catch (const NonNormalizableError&) {
    st.wave.N = 1.0;
  }
  return st;
}

inline cplx upper_u(const SpinorState& st, cplx s) { return jacobi_wave(st.wave, s); }

inline WaveDerivs upper_u_derivs(const SpinorState& st, cplx s) { return jacobi_wave_derivs(st.wave, s); }

/// Lower component from the first-order coupling applied analytically:
/// m w = N phi {[E + V0(1-s)/q + i alpha (e0 (1-s) - e1 s)] P_n^{(2e0,2e1)}
///              - i alpha (n + 2 e0 + 2 e1 + 1) s(1-s) P_{n-1}^{(2e0+1,2e1+1)}},
/// phi = s^{e0}(1-s)^{e1}, P evaluated at 1 - 2s.
inline cplx lower_w(const SpinorState& st, cplx s) {
  const JacobiWave& w = st.wave;
  detail::check_boundary(w, s);
  if (s == 0.0 || s == 1.0) return 0.0;
  const PotentialSpec& sp = st.spec;
  const cplx E = st.level.E, al = sp.alpha(), V0 = sp.V0(), q = sp.q();
  const cplx e0 = w.exp0, e1 = w.exp1, t = 1.0 - s, z = 1.0 - 2.0 * s;
  const int n = w.n;
  const cplx phi = w.N * std::pow(s, e0) * std::pow(t, e1);
  const cplx P = jacobi_sum(w.params(), z);
  cplx second = 0.0;
  if (n > 0) {
    const cplx Pm = jacobi_sum({n - 1, 2.0 * e0 + 1.0, 2.0 * e1 + 1.0}, z);
    second = -kI * al * (static_cast<double>(n + 1) + 2.0 * e0 + 2.0 * e1) * s * t * Pm;
  }
  const cplx first = (E + V0 * t / q + kI * al * (e0 * t - e1 * s)) * P;
  return phi * (first + second) / sp.m();
}

/// The two-term lower component in the form printed alongside the upper component
/// (second term carries P_n^{(2e0+1,2e1+1)}); kept for comparison against lower_w.
inline cplx lower_w_printed(const SpinorState& st, cplx s) {
  const JacobiWave& w = st.wave;
  const PotentialSpec& sp = st.spec;
  const cplx E = st.level.E, al = sp.alpha(), V0 = sp.V0(), q = sp.q();
  const cplx e0 = w.exp0, e1 = w.exp1, t = 1.0 - s, z = 1.0 - 2.0 * s;
  const double n1 = w.n + 1;
  const cplx phi = w.N * std::pow(s, e0) * std::pow(t, e1);
  const cplx P = jacobi_sum(w.params(), z);
  const cplx P1 = jacobi_sum({w.n, 2.0 * e0 + 1.0, 2.0 * e1 + 1.0}, z);
  const cplx bracket = E - kI * al * e1 + (V0 / q - kI * al * (n1 + kI * V0 / (al * q)) * t);
  return (phi * bracket * P + phi * kI * al * (n1 + 2.0 * kI * V0 / (q * al)) * P1) / sp.m();
}

/// Schrodinger trigonometric-PT state psi = N s^{e0}(1-s)^{e1} P_n^{(2e0,2e1)}(1-2s).
inline JacobiWave schrodinger_wave(const SchrodingerLevel& L) {
  JacobiWave w{L.n, L.exp0, L.exp1, 1.0};
  try {
    w.N = normalization(L.n, L.exp0, L.exp1);
  } catch (const NonNormalizableError&) {
  }
  return w;
}

// ---------------------------------------------------------------------------
// q = 0 (exponential potential), s = e^{-alpha x}.

struct ConfluentState {
  PotentialSpec spec;
  cplx E;
  cplx eps;                 // sqrt(m^2 - E^2)/alpha, principal
  cplx ka, kb, kz;          // 1F1 parameters a, b and z = kz * s
  bool in_bound_window;     // E real with |E| < m
  cplx A = 1.0;             // amplitude
};

inline ConfluentState make_confluent_state(const PotentialSpec& spec, cplx E) {
  if (spec.variant() != Variant::Exponential) throw MisuseError("confluent solution needs the exponential variant");
  if (spec.V0() == 0.0) throw MisuseError("confluent solution needs V0 != 0");
  const ExponentialCoefficients c = exponential_coefficients(spec, E);
  const cplx al = spec.alpha(), V0 = spec.V0();
  const cplx eps = std::sqrt(c.eps2);
  ConfluentState st{spec, E, eps, eps + 0.5 + kI * c.beta * al / (2.0 * V0), 1.0 + 2.0 * eps, 2.0 * kI * V0 / al,
                    E.imag() == 0.0 && std::abs(E.real()) < spec.m()};
  return st;
}

inline WaveDerivs confluent_u_derivs(const ConfluentState& st, cplx s) {
  const cplx delta = st.spec.V0() / st.spec.alpha();
  const cplx z = st.kz * s;
  const cplx M = kummer_1f1(st.ka, st.kb, z);
  const cplx M1 = st.kz * st.ka / st.kb * kummer_1f1(st.ka + 1.0, st.kb + 1.0, z);
  const cplx M2 = st.kz * st.kz * st.ka * (st.ka + 1.0) / (st.kb * (st.kb + 1.0)) *
                  kummer_1f1(st.ka + 2.0, st.kb + 2.0, z);
  if (s == 0.0) {
    if (st.eps.real() > 0.0) return {0.0, 0.0, 0.0};
    throw DomainError("confluent solution at s = 0 with Re(eps) <= 0");
  }
  const cplx phi = st.A * std::pow(s, st.eps) * std::exp(-kI * delta * s);
  const cplx g = st.eps / s - kI * delta, gp = -st.eps / (s * s);
  return {phi * M, phi * (M1 + g * M), phi * (M2 + 2.0 * g * M1 + (g * g + gp) * M)};
}

/// (u, w) with m w = -i alpha s du/ds + (E + V0 s) u.
inline std::pair<cplx, cplx> q0_spinors(const ConfluentState& st, cplx s) {
  const WaveDerivs d = confluent_u_derivs(st, s);
  const cplx w = (-kI * st.spec.alpha() * s * d.du + (st.E + st.spec.V0() * s) * d.u) / st.spec.m();
  return {d.u, w};
}

}  // namespace nudirac
