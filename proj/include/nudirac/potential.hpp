#pragma once

// Generalized Woods-Saxon potential V(x) = -V0 e^{-alpha x} / (1 + q e^{-alpha x})
// and its complexified variants. Every variant is this one formula evaluated
// with (possibly) complex parameters.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nudirac/errors.hpp"
#include "nudirac/types.hpp"

namespace nudirac {

enum class Variant { RealWS, ShiftedWS, ShiftedHulthen, Exponential, PTTrig, NonPTComplex, PseudoHermitian };

inline std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::RealWS: return "real-ws";
    case Variant::ShiftedWS: return "shifted-ws";
    case Variant::ShiftedHulthen: return "shifted-hulthen";
    case Variant::Exponential: return "exponential";
    case Variant::PTTrig: return "pt-trig";
    case Variant::NonPTComplex: return "non-pt-complex";
    case Variant::PseudoHermitian: return "pseudo-hermitian";
  }
  return "unknown";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
  for (Variant v : {Variant::RealWS, Variant::ShiftedWS, Variant::ShiftedHulthen, Variant::Exponential,
                    Variant::PTTrig, Variant::NonPTComplex, Variant::PseudoHermitian})
    if (variant_name(v) == s) return v;
  return std::nullopt;
}

/// True for variants whose parameters are the images of real ones under a complexification map.
inline bool is_complexified(Variant v) {
  return v == Variant::PTTrig || v == Variant::NonPTComplex || v == Variant::PseudoHermitian;
}

/// Immutable parameter record {V0, q, alpha, m, R0} plus the variant tag.
class PotentialSpec {
 public:
  PotentialSpec(Variant variant, cplx V0, cplx q, cplx alpha, double m, double R0 = 0.0)
      : variant_(variant), V0_(V0), q_(q), alpha_(alpha), m_(m), R0_(R0) {
    validate();
  }

  static PotentialSpec real_ws(double V0, double q, double alpha, double m, double R0 = 0.0) {
    return {Variant::RealWS, V0, q, alpha, m, R0};
  }
  static PotentialSpec shifted_ws(double V0, double alpha, double m) { return {Variant::ShiftedWS, V0, 1.0, alpha, m}; }
  static PotentialSpec shifted_hulthen(double V0, double alpha, double m) {
    return {Variant::ShiftedHulthen, V0, -1.0, alpha, m};
  }
  static PotentialSpec exponential(double V0, double alpha, double m) {
    return {Variant::Exponential, V0, 0.0, alpha, m};
  }

  Variant variant() const { return variant_; }
  cplx V0() const { return V0_; }
  cplx q() const { return q_; }
  cplx alpha() const { return alpha_; }
  /// Diffuseness a = 1/alpha.
  cplx a() const { return 1.0 / alpha_; }
  double m() const { return m_; }
  double R0() const { return R0_; }

  /// Copy with a different variant tag and parameters (validated).
  PotentialSpec with(Variant v, cplx V0, cplx q, cplx alpha) const { return {v, V0, q, alpha, m_, R0_}; }
  PotentialSpec with_V0(cplx V0) const { return {variant_, V0, q_, alpha_, m_, R0_}; }
  PotentialSpec with_alpha(cplx alpha) const { return {variant_, V0_, q_, alpha, m_, R0_}; }

 private:
  void validate() const {
    if (!(m_ > 0.0) || !std::isfinite(m_)) throw DomainError("PotentialSpec: m must be positive and finite");
    if (!(R0_ >= 0.0) || !std::isfinite(R0_)) throw DomainError("PotentialSpec: R0 must be nonnegative");
    if (alpha_ == 0.0) throw DomainError("PotentialSpec: alpha must be nonzero");
    for (cplx z : {V0_, q_, alpha_})
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("PotentialSpec: non-finite parameter");
    switch (variant_) {
      case Variant::Exponential:
        if (q_ != 0.0) throw DomainError("PotentialSpec: exponential variant requires q = 0");
        break;
      case Variant::ShiftedWS:
        if (q_ != 1.0) throw DomainError("PotentialSpec: shifted Woods-Saxon requires q = 1");
        break;
      case Variant::ShiftedHulthen:
        if (q_ != -1.0) throw DomainError("PotentialSpec: shifted Hulthen requires q = -1");
        break;
      default:
        if (q_ == 0.0) throw DomainError("PotentialSpec: q = 0 is reserved for the exponential variant");
    }
    const bool real_params = is_real(V0_) && is_real(q_) && is_real(alpha_);
    if ((variant_ == Variant::RealWS || variant_ == Variant::ShiftedWS || variant_ == Variant::ShiftedHulthen ||
         variant_ == Variant::Exponential) &&
        !real_params)
      throw DomainError("PotentialSpec: " + std::string(variant_name(variant_)) + " requires real V0, q, alpha");
  }

  Variant variant_;
  cplx V0_, q_, alpha_;
  double m_, R0_;
};

/// Applies the parameter map of `target` to a real Woods-Saxon base:
/// PTTrig alpha -> i alpha; NonPTComplex V0 -> i V0, q -> i q; PseudoHermitian all three.
inline PotentialSpec complexify(const PotentialSpec& base, Variant target) {
  if (base.variant() != Variant::RealWS) throw MisuseError("complexify: base must be a real Woods-Saxon spec");
  const cplx V0 = base.V0(), q = base.q(), al = base.alpha();
  switch (target) {
    case Variant::RealWS: return base;
    case Variant::PTTrig: return base.with(target, V0, q, kI * al);
    case Variant::NonPTComplex: return base.with(target, kI * V0, kI * q, al);
    case Variant::PseudoHermitian: return base.with(target, kI * V0, kI * q, kI * al);
    case Variant::ShiftedWS:
      if (q != 1.0) throw MisuseError("complexify: shifted Woods-Saxon needs q = 1");
      return base.with(target, V0, q, al);
    case Variant::ShiftedHulthen:
      if (q != -1.0) throw MisuseError("complexify: shifted Hulthen needs q = -1");
      return base.with(target, V0, q, al);
    case Variant::Exponential:
      throw MisuseError("complexify: no parameter map sets q to zero");
  }
  throw MisuseError("complexify: unknown target");
}

/// Inverse of complexify: the real parameters the spec was built from.
/// Real variants map to themselves (re-tagged as RealWS when q != 0).
inline PotentialSpec underlying_real(const PotentialSpec& spec) {
  const cplx V0 = spec.V0(), q = spec.q(), al = spec.alpha();
  switch (spec.variant()) {
    case Variant::PTTrig: return spec.with(Variant::RealWS, V0.real(), q.real(), (al / kI).real());
    case Variant::NonPTComplex: return spec.with(Variant::RealWS, (V0 / kI).real(), (q / kI).real(), al.real());
    case Variant::PseudoHermitian:
      return spec.with(Variant::RealWS, (V0 / kI).real(), (q / kI).real(), (al / kI).real());
    case Variant::Exponential: return spec;
    default: return spec.with(Variant::RealWS, V0, q, al);
  }
}

inline constexpr double kPoleTolerance = 1e-12;

/// Pole of 1 + q e^{-alpha x} nearest to x, if any (q != 0).
inline std::optional<cplx> nearest_pole(const PotentialSpec& spec, double x) {
  const cplx q = spec.q(), al = spec.alpha();
  if (q == 0.0) return std::nullopt;
  // Poles: alpha x_k = Log(-q) + 2 pi i k.
  const cplx L = std::log(-q);
  const cplx t = (al * x - L) / (2.0 * kPi * kI);
  const double k0 = std::round(t.real());
  std::optional<cplx> best;
  for (double k : {k0 - 1.0, k0, k0 + 1.0}) {
    const cplx xp = (L + 2.0 * kPi * kI * k) / al;
    if (!best || std::abs(xp - x) < std::abs(*best - x)) best = xp;
  }
  return best;
}

/// V(x) = -V0 e^{-alpha x} / (1 + q e^{-alpha x}).
inline cplx evaluate(const PotentialSpec& spec, double x) {
  if (!std::isfinite(x)) throw DomainError("evaluate: x must be finite");
  if (const auto p = nearest_pole(spec, x); p && std::abs(*p - x) < kPoleTolerance)
    throw SingularPointError("evaluate: x is at a pole of the potential", *p);
  const cplx e = std::exp(-spec.alpha() * x);
  return -spec.V0() * e / (1.0 + spec.q() * e);
}

/// s(x) = 1/(1 + q e^{-alpha x}) for q != 0, s(x) = e^{-alpha x} for the exponential variant.
inline cplx s_of_x(const PotentialSpec& spec, double x) {
  const cplx e = std::exp(-spec.alpha() * x);
  if (spec.variant() == Variant::Exponential) return e;
  const cplx d = 1.0 + spec.q() * e;
  if (std::abs(d) < kPoleTolerance) throw SingularPointError("s_of_x: x is at a pole of the map", x);
  return 1.0 / d;
}

/// Inverse map, principal logarithm. For the Woods-Saxon map x = (1/alpha) Log(q s/(1-s)).
inline cplx x_of_s(const PotentialSpec& spec, cplx s) {
  if (s == 0.0) throw DomainError("x_of_s: s = 0 is outside the image of the map");
  if (spec.variant() == Variant::Exponential) return -std::log(s) / spec.alpha();
  if (s == 1.0) throw DomainError("x_of_s: s = 1 is outside the image of the map");
  return std::log(spec.q() * s / (1.0 - s)) / spec.alpha();
}

enum class SymmetryKind { PT, PseudoHermitian, Hermiticity };

struct SymmetryReport {
  SymmetryKind kind;
  double max_defect = 0.0;         // max |V(x) - conj(V(x'))|
  double max_scaled_defect = 0.0;  // same, divided by max(1, |V(x)|)
};

/// PT: x' = -x. Pseudo-Hermitian: x' = pi/alpha_r - x with alpha_r the real period
/// parameter of the underlying map. Otherwise x' = x (Hermiticity).
inline SymmetryReport symmetry_check(const PotentialSpec& spec, const std::vector<double>& samples) {
  if (samples.empty()) throw MisuseError("symmetry_check: empty sample set");
  SymmetryReport r{SymmetryKind::Hermiticity};
  double reflect = 0.0;
  double sign = 1.0;
  if (spec.variant() == Variant::PTTrig) {
    r.kind = SymmetryKind::PT;
    sign = -1.0;
  } else if (spec.variant() == Variant::PseudoHermitian) {
    r.kind = SymmetryKind::PseudoHermitian;
    sign = -1.0;
    reflect = kPi / underlying_real(spec).alpha().real();
  }
  for (double x : samples) {
    const cplx v = evaluate(spec, x);
    const cplx w = std::conj(evaluate(spec, reflect + sign * x));
    const double d = std::abs(v - w);
    r.max_defect = std::max(r.max_defect, d);
    r.max_scaled_defect = std::max(r.max_scaled_defect, d / std::max(1.0, std::abs(v)));
  }
  return r;
}

}  // namespace nudirac
