#pragma once

// Closed-form Dirac spectrum
//   E = -[V0/(2q) +- kappa_n sqrt(m^2/(V0^2 + kappa_n^2) - 1/(4q^2))],
//   kappa_n = -[i V0 + q alpha (n+1)],
// its special cases, the trigonometric PT Schrodinger spectrum, and level windows.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nudirac/errors.hpp"
#include "nudirac/potential.hpp"
#include "nudirac/types.hpp"

namespace nudirac {

inline constexpr double kRealSpectrumTol = 1e-10;

struct EnergyLevel {
  int n = 0;
  int branch = +1;  // sign in front of kappa_n in the spectrum formula
  cplx E{};
  cplx epsilon{};  // a sqrt(m^2 - E^2), principal branch
  cplx b{};        // a sqrt(m^2 - (E + V0/q)^2), principal branch
  cplx kappa_n{};
  // Frobenius exponents at s = 0 and s = 1 after sign resolution:
  // exp0 = sign0 * b, exp1 = sign1 * epsilon with exp0 + exp1 = -(n+1) - i a V0/q.
  int sign0 = +1, sign1 = +1;
  cplx exp0{}, exp1{};
  bool real_spectrum = false;
  bool normalizable = false;
};

/// Principal-branch exponents (epsilon, b) at energy E.
inline std::pair<cplx, cplx> principal_exponents(const PotentialSpec& spec, cplx E) {
  const cplx a = spec.a();
  const double m = spec.m();
  const cplx eps = a * std::sqrt(m * m - E * E);
  const cplx b = a * std::sqrt(m * m - (E + spec.V0() / spec.q()) * (E + spec.V0() / spec.q()));
  return {eps, b};
}

/// Target value of exp0 + exp1 fixed by the NU quantization condition.
inline cplx quantization_target(const PotentialSpec& spec, int n) {
  return -static_cast<double>(n + 1) - kI * spec.a() * spec.V0() / spec.q();
}

namespace detail {

/// Chooses the signs (s0, s1) minimizing |s0 b + s1 eps - target|; ties keep the earlier
/// combination in the order (+,+), (+,-), (-,+), (-,-).
inline std::pair<int, int> resolve_signs(cplx b, cplx eps, cplx target) {
  std::pair<int, int> best{+1, +1};
  double best_r = std::numeric_limits<double>::infinity();
  for (const auto& [s0, s1] : std::array<std::pair<int, int>, 4>{{{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}}) {
    const double r = std::abs(static_cast<double>(s0) * b + static_cast<double>(s1) * eps - target);
    if (r < best_r * (1.0 - 1e-12)) {
      best_r = r;
      best = {s0, s1};
    }
  }
  return best;
}

inline void fill_level(const PotentialSpec& spec, EnergyLevel& L) {
  const auto [eps, b] = principal_exponents(spec, L.E);
  L.epsilon = eps;
  L.b = b;
  const auto [s0, s1] = resolve_signs(b, eps, quantization_target(spec, L.n));
  L.sign0 = s0;
  L.sign1 = s1;
  L.exp0 = static_cast<double>(s0) * b;
  L.exp1 = static_cast<double>(s1) * eps;
  L.real_spectrum = std::abs(L.E.imag()) <= kRealSpectrumTol;
  L.normalizable = L.exp0.real() > 0.0 && L.exp1.real() > 0.0;
}

inline void check_level_args(const PotentialSpec& spec, int n, int branch) {
  if (spec.q() == 0.0)
    throw NuInapplicableError("closed-form spectrum is not available for q = 0 (exponential potential)");
  if (n < 0) throw MisuseError("quantum number n must be nonnegative");
  if (branch != 1 && branch != -1) throw MisuseError("branch must be +1 or -1");
}

}  // namespace detail

inline cplx kappa_n(const PotentialSpec& spec, int n) {
  return -(kI * spec.V0() + spec.q() * spec.alpha() * static_cast<double>(n + 1));
}

/// Builds a level record for a given energy (used by the closed forms and by callers
/// holding an externally computed E).
inline EnergyLevel make_level(const PotentialSpec& spec, int n, int branch, cplx E) {
  detail::check_level_args(spec, n, branch);
  EnergyLevel L;
  L.n = n;
  L.branch = branch;
  L.E = E;
  L.kappa_n = kappa_n(spec, n);
  detail::fill_level(spec, L);
  return L;
}

inline EnergyLevel dirac_energy(const PotentialSpec& spec, int n, int branch) {
  detail::check_level_args(spec, n, branch);
  const cplx V0 = spec.V0(), q = spec.q();
  const double m = spec.m();
  const cplx kap = kappa_n(spec, n);
  const cplx den = V0 * V0 + kap * kap;
  if (std::abs(den) <= 1e-14 * std::max(std::abs(V0 * V0), std::abs(kap * kap)))
    throw SingularCouplingError("V0^2 + kappa_n^2 vanishes");
  const cplx root = std::sqrt(m * m / den - 1.0 / (4.0 * q * q));
  const cplx E = -(V0 / (2.0 * q) + static_cast<double>(branch) * kap * root);
  return make_level(spec, n, branch, E);
}

/// Both branches, ordered (+, -).
inline std::array<EnergyLevel, 2> dirac_energy_pair(const PotentialSpec& spec, int n) {
  return {dirac_energy(spec, n, +1), dirac_energy(spec, n, -1)};
}

/// q = 1: E = -V0/2 +- [i V0 + alpha(n+1)] sqrt(m^2/(V0^2 + [i V0 + alpha(n+1)]^2) - 1/4).
inline EnergyLevel shifted_ws_energy(const PotentialSpec& spec, int n, int branch) {
  if (spec.q() != 1.0) throw MisuseError("shifted Woods-Saxon formula needs q = 1");
  detail::check_level_args(spec, n, branch);
  const cplx V0 = spec.V0(), al = spec.alpha();
  const double m = spec.m();
  const cplx w = kI * V0 + al * static_cast<double>(n + 1);
  const cplx E = -V0 / 2.0 + static_cast<double>(branch) * w * std::sqrt(m * m / (V0 * V0 + w * w) - 0.25);
  return make_level(spec, n, branch, E);
}

/// q = -1: E = V0/2 +- [i V0 - alpha(n+1)] sqrt(m^2/(V0^2 + [i V0 - alpha(n+1)]^2) - 1/4).
inline EnergyLevel shifted_hulthen_energy(const PotentialSpec& spec, int n, int branch) {
  if (spec.q() != -1.0) throw MisuseError("shifted Hulthen formula needs q = -1");
  detail::check_level_args(spec, n, branch);
  const cplx V0 = spec.V0(), al = spec.alpha();
  const double m = spec.m();
  const cplx w = kI * V0 - al * static_cast<double>(n + 1);
  const cplx E = V0 / 2.0 + static_cast<double>(branch) * w * std::sqrt(m * m / (V0 * V0 + w * w) - 0.25);
  return make_level(spec, n, branch, E);
}

/// V0 = 0: E = +- (1/2) sqrt(4 m^2 - (n+1)^2 alpha^2). Matches the general formula's
/// branch labels when Re(q alpha) > 0.
inline EnergyLevel zero_coupling_energy(const PotentialSpec& spec, int n, int branch) {
  if (spec.V0() != 0.0) throw MisuseError("zero-coupling formula needs V0 = 0");
  detail::check_level_args(spec, n, branch);
  const cplx al = spec.alpha();
  const double m = spec.m(), n1 = n + 1;
  const cplx E = static_cast<double>(branch) * 0.5 * std::sqrt(4.0 * m * m - n1 * n1 * al * al);
  return make_level(spec, n, branch, E);
}

/// Dispatches to the special-case formula matching the spec (q = 1, q = -1, V0 = 0).
inline EnergyLevel shifted_energy(const PotentialSpec& spec, int n, int branch) {
  if (spec.V0() == 0.0) return zero_coupling_energy(spec, n, branch);
  if (spec.q() == 1.0) return shifted_ws_energy(spec, n, branch);
  if (spec.q() == -1.0) return shifted_hulthen_energy(spec, n, branch);
  throw MisuseError("no special-case formula for this spec (needs q = +-1 or V0 = 0)");
}

/// (eps + b) + (n+1) + i a V0/q with eps, b recomputed from level.E and the signs recorded
/// on the level.
inline cplx quantization_residual(const EnergyLevel& level, const PotentialSpec& spec) {
  const auto [eps, b] = principal_exponents(spec, level.E);
  return static_cast<double>(level.sign0) * b + static_cast<double>(level.sign1) * eps -
         quantization_target(spec, level.n);
}

// ---------------------------------------------------------------------------
// Schrodinger equation with the trigonometric PT potential.

struct SchrodingerLevel {
  int n = 0;
  double E = 0.0;
  cplx epsilon{}, d{};  // eps = sqrt(2 m a^2 E), d = sqrt(eps^2 - beta^2), principal
  int sign0 = +1, sign1 = +1;
  cplx exp0{}, exp1{};  // resolved, exp0 + exp1 = -(n+1)
  bool normalizable = false;
};

/// E = (1/(2 m a^2)) [(n+1)/2 - gamma/(n+1)]^2, gamma = m a^2 V0/q, with the real
/// parameters underlying the PT spec.
inline SchrodingerLevel schrodinger_pt_energy(const PotentialSpec& spec, int n) {
  if (spec.variant() != Variant::PTTrig) throw MisuseError("schrodinger_pt_energy needs a PTTrig spec");
  if (n < 0) throw MisuseError("quantum number n must be nonnegative");
  const PotentialSpec r = underlying_real(spec);
  const double a = r.a().real(), m = r.m(), q = r.q().real(), V0 = r.V0().real();
  const double g = m * a * a * V0 / q, n1 = n + 1;
  const double t = n1 / 2.0 - g / n1;
  SchrodingerLevel L;
  L.n = n;
  L.E = t * t / (2.0 * m * a * a);
  const cplx eps2 = 2.0 * m * a * a * L.E, beta2 = -2.0 * m * a * a * V0 / q;
  L.epsilon = std::sqrt(eps2);
  L.d = std::sqrt(eps2 - beta2);
  const auto [s0, s1] = detail::resolve_signs(L.d, L.epsilon, -n1);
  L.sign0 = s0;
  L.sign1 = s1;
  L.exp0 = static_cast<double>(s0) * L.d;
  L.exp1 = static_cast<double>(s1) * L.epsilon;
  L.normalizable = L.exp0.real() > 0.0 && L.exp1.real() > 0.0;
  return L;
}

// ---------------------------------------------------------------------------
// Level windows.

enum class WindowSource { RealPartBound, DirectInequality, NotApplicable };

inline std::string_view window_source_name(WindowSource s) {
  switch (s) {
    case WindowSource::RealPartBound: return "real-part-bound";
    case WindowSource::DirectInequality: return "direct-inequality";
    case WindowSource::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

struct LevelWindow {
  std::optional<int> n_min, n_max;  // both set or both empty
  WindowSource source = WindowSource::NotApplicable;
  bool complex_window = false;  // 4 q^2 m^2 < V0^2 in the real-part bound
  bool at_least_one = false;
  // Trigonometric variants: the n-bounds as printed alongside the spectrum,
  // (V0 + q alpha -+ sqrt(V0^2 - 4 q^2 m^2))/(q alpha), with the integer levels they admit.
  std::optional<std::pair<double, double>> printed_bounds;
  std::optional<std::pair<int, int>> printed_levels;

  bool empty() const { return !n_min.has_value(); }
  bool contains(int n) const { return n_min && n >= *n_min && n <= *n_max; }
};

/// Critical coupling for the trigonometric PT variant: V0 <= -q(n+1)/(2a) - 2 q a m^2/(n+1).
inline double critical_coupling(double q, double a, double m, int n) {
  const double n1 = n + 1;
  return -q * n1 / (2.0 * a) - 2.0 * q * a * m * m / n1;
}

namespace detail {

inline void set_window(LevelWindow& w, double lo, double hi) {
  const double eps = 1e-12;
  const int nlo = std::max(0, static_cast<int>(std::ceil(lo - eps)));
  if (!std::isfinite(hi) || hi + eps < nlo) return;
  const int nhi = static_cast<int>(std::floor(hi + eps));
  if (nhi < nlo) return;
  w.n_min = nlo;
  w.n_max = nhi;
}

}  // namespace detail

inline LevelWindow admissible_levels(const PotentialSpec& spec) {
  if (spec.q() == 0.0) throw NuInapplicableError("level window undefined for q = 0");
  LevelWindow w;
  switch (spec.variant()) {
    case Variant::RealWS:
    case Variant::ShiftedWS:
    case Variant::ShiftedHulthen: {
      // n <= Re[(sqrt(4 q^2 m^2 - V0^2) - i V0)/(q alpha)] - 1
      w.source = WindowSource::RealPartBound;
      const double q = spec.q().real(), al = spec.alpha().real(), m = spec.m(), V0 = spec.V0().real();
      const double rad = 4.0 * q * q * m * m - V0 * V0;
      w.complex_window = rad < 0.0;
      const cplx bound = (std::sqrt(cplx(rad)) - kI * V0) / (q * al) - 1.0;
      detail::set_window(w, 0.0, bound.real());
      // q alpha + i V0 <= sqrt(4 q^2 m^2 - V0^2), through real parts.
      w.at_least_one = q * al <= std::sqrt(cplx(rad)).real();
      return w;
    }
    case Variant::PTTrig:
    case Variant::PseudoHermitian: {
      // 4 q^2 m^2 <= V0^2 - (V0 + c)^2 with c = q(n+1)/a, real underlying parameters.
      w.source = WindowSource::DirectInequality;
      const PotentialSpec r = underlying_real(spec);
      const double q = r.q().real(), a = r.a().real(), m = r.m(), V0 = r.V0().real();
      const double rad = V0 * V0 - 4.0 * q * q * m * m;
      if (rad >= 0.0) {
        const double c_lo = -V0 - std::sqrt(rad), c_hi = -V0 + std::sqrt(rad);
        double lo = c_lo * a / q - 1.0, hi = c_hi * a / q - 1.0;
        if (lo > hi) std::swap(lo, hi);
        detail::set_window(w, lo, hi);
        const double al = 1.0 / a;
        double plo = (V0 + q * al - std::sqrt(rad)) / (q * al), phi = (V0 + q * al + std::sqrt(rad)) / (q * al);
        if (plo > phi) std::swap(plo, phi);
        w.printed_bounds = std::make_pair(plo, phi);
        LevelWindow pw;
        detail::set_window(pw, plo, phi);
        if (!pw.empty()) w.printed_levels = std::make_pair(*pw.n_min, *pw.n_max);
      }
      w.at_least_one = !w.empty();
      return w;
    }
    default:
      return w;
  }
}

}  // namespace nudirac
