#pragma once

// Nikiforov-Uvarov kernel for  u'' + (tau_tilde/sigma) u' + (sigma_tilde/sigma^2) u = 0.
// The substitution u = phi(s) y(s) with phi'/phi = pi/sigma turns it into
// sigma y'' + tau y' + lambda y = 0, where
//   pi = (sigma' - tau_tilde)/2 +- sqrt(((sigma' - tau_tilde)/2)^2 - sigma_tilde + k sigma),
//   tau = tau_tilde + 2 pi,  lambda = k + pi'.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "nudirac/errors.hpp"
#include "nudirac/polynomial.hpp"
#include "nudirac/types.hpp"

namespace nudirac {

inline constexpr double kPerfectSquareTol = 1e-10;

struct HypergeometricForm {
  Poly2 sigma, tau_tilde, sigma_tilde;

  HypergeometricForm(Poly2 sigma_, Poly2 tau_tilde_, Poly2 sigma_tilde_)
      : sigma(sigma_), tau_tilde(tau_tilde_), sigma_tilde(sigma_tilde_) {
    if (sigma.degree() < 0) throw MisuseError("HypergeometricForm: sigma is identically zero");
    if (tau_tilde.c2 != 0.0) throw MisuseError("HypergeometricForm: tau_tilde must have degree <= 1");
  }

  /// (sigma' - tau_tilde)/2.
  Poly2 half_shift() const { return 0.5 * (sigma.derivative() - tau_tilde); }

  /// The radicand of the pi(s) square root, as a polynomial in s, at a given k.
  Poly2 radicand(cplx k) const {
    const Poly2 h = half_shift();
    return Poly2::product_linear(h, h) - sigma_tilde + k * sigma;
  }

  /// Residual of the original ODE, scaled by the magnitude of its terms.
  double ode_residual(cplx s, cplx u, cplx du, cplx d2u) const {
    const cplx sg = sigma(s);
    const cplx t1 = sg * sg * d2u, t2 = sg * tau_tilde(s) * du, t3 = sigma_tilde(s) * u;
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    return scale == 0.0 ? 0.0 : std::abs(t1 + t2 + t3) / scale;
  }
};

/// Roots k of the s-discriminant of the radicand (a polynomial in k of degree <= 2).
struct KCandidates {
  std::vector<cplx> k;
  bool any_k = false;           // discriminant vanishes for every k
  bool zero_radicand = false;   // at some returned k the radicand is identically zero
};

namespace detail {

/// Roots of c2 k^2 + c1 k + c0, degree decided relative to the coefficient scale.
inline std::vector<cplx> quadratic_roots(cplx c2, cplx c1, cplx c0) {
  const double scale = std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) return {};
  const double cut = 1e-14 * scale;
  if (std::abs(c2) <= cut) {
    if (std::abs(c1) <= cut) return {};
    return {-c0 / c1};
  }
  const cplx d = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
  // Choose the sign that avoids cancellation, then use Vieta for the other root.
  const cplx qq = -0.5 * ((std::real(std::conj(c1) * d) >= 0.0) ? c1 + d : c1 - d);
  if (qq == 0.0) return {cplx(0.0), cplx(0.0)};
  return {qq / c2, c0 / qq};
}

}  // namespace detail

inline KCandidates candidate_k(const HypergeometricForm& f) {
  const Poly2 h = f.half_shift();
  const Poly2& st = f.sigma_tilde;
  const Poly2& sg = f.sigma;
  // Radicand A(k) s^2 + B(k) s + C(k) with A = A0 + k s2, B = B0 + k s1, C = C0 + k s0.
  const cplx A0 = h.c1 * h.c1 - st.c2, B0 = 2.0 * h.c0 * h.c1 - st.c1, C0 = h.c0 * h.c0 - st.c0;
  // D(k) = (B0 + k s1)^2 - 4 (A0 + k s2)(C0 + k s0)
  const cplx d2 = sg.c1 * sg.c1 - 4.0 * sg.c2 * sg.c0;
  const cplx d1 = 2.0 * B0 * sg.c1 - 4.0 * (A0 * sg.c0 + sg.c2 * C0);
  const cplx d0 = B0 * B0 - 4.0 * A0 * C0;
  KCandidates out;
  const double scale = std::max({std::abs(d2), std::abs(d1), std::abs(d0)});
  const double ref = std::max({1.0, std::abs(B0) * std::abs(B0), std::abs(A0 * C0), std::abs(sg.c1 * sg.c1)});
  if (scale <= 1e-14 * ref) {
    out.any_k = true;
    return out;
  }
  out.k = detail::quadratic_roots(d2, d1, d0);
  for (const cplx k : out.k)
    if (f.radicand(k).scale() <= 1e-12 * std::max(1.0, f.sigma_tilde.scale())) out.zero_radicand = true;
  return out;
}

/// Which root k and which sign of the square root produced a candidate.
struct BranchTag {
  int k_index = 0;  // index into candidate_k(...).k
  int sign = +1;    // +1 or -1 in front of the square root

  std::string str() const { return "k" + std::to_string(k_index) + (sign > 0 ? "+" : "-"); }
  friend bool operator==(const BranchTag&, const BranchTag&) = default;
};

struct NUSolution {
  cplx k;
  Poly2 pi;
  Poly2 tau;
  cplx lambda;
  BranchTag branch;

  cplx tau_prime() const { return tau.c1; }
};

/// Square root of a perfect-square quadratic: returns (p, r) with radicand = (p s + r)^2.
inline std::pair<cplx, cplx> perfect_square_root(const Poly2& R) {
  const cplx A = R.c2, B = R.c1, C = R.c0;
  const double disc = std::abs(B * B - 4.0 * A * C);
  const double ref = std::max({1.0, std::abs(B * B), std::abs(4.0 * A * C)});
  if (disc > kPerfectSquareTol * ref) throw PerfectSquareError("radicand is not a perfect square at this k");
  const double cut = 1e-14 * std::max(1.0, R.scale());
  if (std::abs(A) > cut) {
    const cplx p = std::sqrt(A);
    return {p, B / (2.0 * p)};
  }
  return {0.0, std::sqrt(C)};
}

/// The two linear polynomials pi = (sigma' - tau_tilde)/2 +- (p s + r).
inline std::array<Poly2, 2> pi_candidates(const HypergeometricForm& f, cplx k) {
  const auto [p, r] = perfect_square_root(f.radicand(k));
  const Poly2 h = f.half_shift();
  const Poly2 root{r, p, 0.0};
  return {h + root, h - root};
}

inline NUSolution make_solution(const HypergeometricForm& f, cplx k, const Poly2& pi, BranchTag tag) {
  const Poly2 tau = f.tau_tilde + 2.0 * pi;
  return {k, pi, tau, k + pi.c1, tag};
}

/// All (k, +-) candidates.
inline std::vector<NUSolution> enumerate_candidates(const HypergeometricForm& f) {
  const KCandidates kc = candidate_k(f);
  if (kc.any_k) throw NuInapplicableError("discriminant vanishes for every k; pi(s) is not determined");
  std::vector<NUSolution> out;
  for (std::size_t i = 0; i < kc.k.size(); ++i) {
    const auto pis = pi_candidates(f, kc.k[i]);
    out.push_back(make_solution(f, kc.k[i], pis[0], {static_cast<int>(i), +1}));
    out.push_back(make_solution(f, kc.k[i], pis[1], {static_cast<int>(i), -1}));
  }
  return out;
}

/// Lower root of sigma (smallest real part), used to rank candidates by the
/// behaviour of phi there.
inline cplx sigma_lower_root(const Poly2& sigma) {
  if (sigma.degree(1e-14) == 2) {
    const auto r = detail::quadratic_roots(sigma.c2, sigma.c1, sigma.c0);
    return r[0].real() <= r[1].real() ? r[0] : r[1];
  }
  if (sigma.degree(1e-14) == 1) return -sigma.c0 / sigma.c1;
  return 0.0;
}

/// Picks the candidate satisfying Re(tau') < 0 (complex extension of tau' < 0).
/// Among admissible candidates: most negative Re(tau'); ties (within 1e-12) go to
/// larger |Im tau'|, then to the larger Re of phi's exponent pi(r)/sigma'(r) at the
/// lower root r of sigma, then to the smaller Im tau', then to the branch tag.
/// Re(tau') = 0 is admissible when no candidate has Re(tau') < 0.
inline NUSolution select_branch(const HypergeometricForm& f, const std::vector<NUSolution>& candidates) {
  constexpr double tol = 1e-12;
  const double scale = std::max(1.0, f.sigma.scale());
  std::vector<NUSolution> ok;
  for (const auto& c : candidates)
    if (c.tau_prime().real() <= tol * scale) ok.push_back(c);
  if (ok.empty()) throw NoBoundBranchError("no NU candidate has Re(tau') <= 0");
  const cplx r = sigma_lower_root(f.sigma);
  const cplx sp = f.sigma.derivative()(r);
  const auto phi_exp = [&](const NUSolution& c) { return sp == 0.0 ? 0.0 : (c.pi(r) / sp).real(); };
  const auto better = [&](const NUSolution& a, const NUSolution& b) {
    const double ra = a.tau_prime().real(), rb = b.tau_prime().real();
    if (std::abs(ra - rb) > tol * scale) return ra < rb;
    const double ia = std::abs(a.tau_prime().imag()), ib = std::abs(b.tau_prime().imag());
    if (std::abs(ia - ib) > tol * scale) return ia > ib;
    const double pa = phi_exp(a), pb = phi_exp(b);
    if (std::abs(pa - pb) > tol * scale) return pa > pb;
    const double sa = a.tau_prime().imag(), sb = b.tau_prime().imag();
    if (std::abs(sa - sb) > tol * scale) return sa < sb;
    return std::make_pair(a.branch.k_index, -a.branch.sign) < std::make_pair(b.branch.k_index, -b.branch.sign);
  };
  return *std::min_element(ok.begin(), ok.end(), better);
}

inline NUSolution select_branch(const HypergeometricForm& f) { return select_branch(f, enumerate_candidates(f)); }

/// lambda_n = -n tau' - n(n-1)/2 sigma''.
inline cplx lambda_n(const NUSolution& sol, const HypergeometricForm& f, int n) {
  if (n < 0) throw MisuseError("lambda_n: n must be nonnegative");
  const double nd = n;
  return -nd * sol.tau_prime() - 0.5 * nd * (nd - 1.0) * f.sigma.second_derivative();
}

/// rho(s) solving (sigma rho)' = tau rho, as a product of power factors of the
/// roots of sigma and an exponential factor (linear sigma) or a pure exponential
/// (constant sigma). Defined up to a constant.
struct RodriguesWeight {
  struct Factor {
    cplx root;
    cplx exponent;
    bool reversed;  // (root - s)^exponent instead of (s - root)^exponent
  };
  std::vector<Factor> factors;
  cplx exp_linear{};     // exp(exp_linear * s + exp_quadratic * s^2)
  cplx exp_quadratic{};

  cplx operator()(cplx s) const {
    cplx v = std::exp(exp_linear * s + exp_quadratic * s * s);
    for (const auto& f : factors) v *= std::pow(f.reversed ? f.root - s : s - f.root, f.exponent);
    return v;
  }

  /// rho'/rho.
  cplx log_derivative(cplx s) const {
    cplx d = exp_linear + 2.0 * exp_quadratic * s;
    for (const auto& f : factors) d += f.exponent / (s - f.root);
    return d;
  }
};

inline RodriguesWeight rodrigues_weight(const Poly2& sigma, const Poly2& tau) {
  RodriguesWeight w;
  const Poly2 g = tau - sigma.derivative();  // rho'/rho = g / sigma
  const int deg = sigma.degree(1e-14);
  if (deg < 0) throw MisuseError("rodrigues_weight: sigma is identically zero");
  if (deg == 0) {
    w.exp_linear = g.c0 / sigma.c0;
    w.exp_quadratic = 0.5 * g.c1 / sigma.c0;
    return w;
  }
  if (deg == 1) {
    const cplx r = -sigma.c0 / sigma.c1;
    w.exp_linear = g.c1 / sigma.c1;
    w.factors.push_back({r, g(r) / sigma.c1, false});
    return w;
  }
  const auto roots = detail::quadratic_roots(sigma.c2, sigma.c1, sigma.c0);
  cplx r1 = roots[0], r2 = roots[1];
  if (r1.real() > r2.real()) std::swap(r1, r2);
  if (std::abs(r1 - r2) <= 1e-12 * std::max(1.0, std::abs(r1)))
    throw MisuseError("rodrigues_weight: sigma has a double root");
  // g/sigma = A1/(s - r1) + A2/(s - r2)
  w.factors.push_back({r1, g(r1) / (sigma.c2 * (r1 - r2)), false});
  w.factors.push_back({r2, g(r2) / (sigma.c2 * (r2 - r1)), true});
  return w;
}

inline RodriguesWeight rodrigues_weight(const NUSolution& sol, const HypergeometricForm& f) {
  return rodrigues_weight(f.sigma, sol.tau);
}

}  // namespace nudirac
