#pragma once

// Complex special functions: gamma/beta, Jacobi polynomials with complex
// parameters, Gauss 2F1, Kummer 1F1, and quadrature on (0,1) with algebraic
// endpoint singularities.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "nudirac/errors.hpp"
#include "nudirac/types.hpp"

namespace nudirac {

/// Neumaier compensated accumulator for complex sums.
class CompensatedSum {
 public:
  void add(cplx x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  struct Part {
    double sum = 0.0, c = 0.0;
    void add(double x) {
      const double t = sum + x;
      if (std::abs(sum) >= std::abs(x))
        c += (sum - t) + x;
      else
        c += (x - t) + sum;
      sum = t;
    }
    double value() const { return sum + c; }
  };
  Part re_, im_;
};

namespace detail {

inline constexpr double kPoleTol = 1e-12;

/// Nearest integer n <= 0 within the pole tolerance, or +1 when z is not at a pole.
inline long nonpositive_integer_at(cplx z) {
  const double r = std::round(z.real());
  if (r <= 0.0 && std::abs(z - cplx(r, 0.0)) < kPoleTol) return static_cast<long>(r);
  return 1;
}

// Lanczos approximation, g = 607/128, 15 terms.
inline constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

/// log Gamma for Re z >= 1/2 (principal branch of the Lanczos form).
inline cplx lgamma_right(cplx z) {
  cplx y = z;
  cplx tmp = z + 5.24218750000000000;
  tmp = (z + 0.5) * std::log(tmp) - tmp;
  cplx ser = 0.999999999999997092;
  for (double c : kLanczos) {
    y += 1.0;
    ser += c / y;
  }
  return tmp + std::log(2.5066282746310005 * ser / z);
}

inline cplx sin_pi(cplx z) {
  // Reduce the real part to keep sin(pi z) accurate near integers.
  const double r = std::round(z.real());
  const cplx w{z.real() - r, z.imag()};
  const cplx v = std::sin(kPi * w);
  return (static_cast<long>(r) % 2 == 0) ? v : -v;
}

}  // namespace detail

/// Gamma function on the complex plane. Throws PoleError at nonpositive integers.
inline cplx cgamma(cplx z) {
  if (const long n = detail::nonpositive_integer_at(z); n <= 0)
    throw PoleError("cgamma: pole at z = " + std::to_string(n), n);
  if (z.real() >= 0.5) return std::exp(detail::lgamma_right(z));
  // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
  return kPi / (detail::sin_pi(z) * std::exp(detail::lgamma_right(1.0 - z)));
}

/// log Gamma (not necessarily the principal branch of log(Gamma); consistent for exp()).
inline cplx clgamma(cplx z) {
  if (const long n = detail::nonpositive_integer_at(z); n <= 0)
    throw PoleError("clgamma: pole at z = " + std::to_string(n), n);
  if (z.real() >= 0.5) return detail::lgamma_right(z);
  return std::log(kPi) - std::log(detail::sin_pi(z)) - detail::lgamma_right(1.0 - z);
}

/// 1/Gamma(z); entire, zero at the nonpositive integers.
inline cplx rgamma(cplx z) {
  if (detail::nonpositive_integer_at(z) <= 0) return 0.0;
  if (z.real() >= 0.5) return std::exp(-detail::lgamma_right(z));
  return detail::sin_pi(z) * std::exp(detail::lgamma_right(1.0 - z)) / kPi;
}

/// Beta function B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), evaluated in log space.
inline cplx cbeta(cplx a, cplx b) {
  if (detail::nonpositive_integer_at(a + b) <= 0) {
    // Gamma(a+b) pole: finite only when a or b also sits on a pole; not supported.
    const long n = detail::nonpositive_integer_at(a + b);
    throw PoleError("cbeta: a+b at pole " + std::to_string(n), n);
  }
  return std::exp(clgamma(a) + clgamma(b) - clgamma(a + b));
}

/// Generalized binomial coefficient C(x, k) for integer k >= 0 via the falling factorial.
inline cplx binom_falling(cplx x, int k) {
  cplx r = 1.0;
  for (int j = 0; j < k; ++j) r *= (x - static_cast<double>(j)) / static_cast<double>(j + 1);
  return r;
}

/// Jacobi polynomial parameters: P_n^{(rho, nu)}.
struct JacobiParams {
  int n = 0;
  cplx rho{}, nu{};
};

inline constexpr int kJacobiMaxDegree = 60;

namespace detail {

inline void check_jacobi(const JacobiParams& p) {
  if (p.n < 0) throw MisuseError("Jacobi degree must be nonnegative");
  if (p.n > kJacobiMaxDegree) throw MisuseError("Jacobi degree above explicit-sum bound (60)");
  if (!std::isfinite(std::abs(p.rho)) || !std::isfinite(std::abs(p.nu)))
    throw MisuseError("Jacobi parameters must be finite");
}

inline cplx ipow(cplx x, int k) {
  cplx r = 1.0;
  for (int j = 0; j < k; ++j) r *= x;
  return r;
}

}  // namespace detail

/// P_n^{(rho,nu)}(z) from the binomial double-factor sum
/// 2^{-n} sum_p (-1)^{n-p} C(n+rho,p) C(n+nu,n-p) (1-z)^{n-p} (1+z)^p.
/// Binomials use falling factorials, so no Gamma poles arise.
inline cplx jacobi_sum(const JacobiParams& p, cplx z) {
  detail::check_jacobi(p);
  const int n = p.n;
  CompensatedSum acc;
  for (int k = 0; k <= n; ++k) {
    const double sign = ((n - k) % 2 == 0) ? 1.0 : -1.0;
    acc.add(sign * binom_falling(static_cast<double>(n) + p.rho, k) *
            binom_falling(static_cast<double>(n) + p.nu, n - k) * detail::ipow(1.0 - z, n - k) *
            detail::ipow(1.0 + z, k));
  }
  return acc.value() * std::ldexp(1.0, -n);
}

/// Value and first two z-derivatives of the binomial-sum representation,
/// differentiated term by term.
struct JacobiDerivs {
  cplx p, dp, d2p;
};

inline JacobiDerivs jacobi_sum_derivs(const JacobiParams& p, cplx z) {
  detail::check_jacobi(p);
  const int n = p.n;
  CompensatedSum v, d1, d2;
  const cplx A = 1.0 - z, B = 1.0 + z;
  for (int k = 0; k <= n; ++k) {
    const int a = n - k;  // power of (1-z)
    const int b = k;      // power of (1+z)
    const double sign = (a % 2 == 0) ? 1.0 : -1.0;
    const cplx c = sign * binom_falling(static_cast<double>(n) + p.rho, k) *
                   binom_falling(static_cast<double>(n) + p.nu, a);
    const auto pw = [](cplx x, int e) { return e < 0 ? cplx(0.0) : detail::ipow(x, e); };
    // f = A^a B^b, dA/dz = -1, dB/dz = +1
    const cplx f = pw(A, a) * pw(B, b);
    const cplx f1 = -static_cast<double>(a) * pw(A, a - 1) * pw(B, b) +
                    static_cast<double>(b) * pw(A, a) * pw(B, b - 1);
    const cplx f2 = static_cast<double>(a * (a - 1)) * pw(A, a - 2) * pw(B, b) -
                    2.0 * static_cast<double>(a * b) * pw(A, a - 1) * pw(B, b - 1) +
                    static_cast<double>(b * (b - 1)) * pw(A, a) * pw(B, b - 2);
    v.add(c * f);
    d1.add(c * f1);
    d2.add(c * f2);
  }
  const double s = std::ldexp(1.0, -n);
  return {v.value() * s, d1.value() * s, d2.value() * s};
}

/// P_n^{(rho,nu)}(z) from the Gamma-ratio single sum
/// Gamma(n+rho+1)/(n! Gamma(n+rho+nu+1)) sum_r C(n,r) Gamma(n+rho+nu+r+1)/Gamma(r+rho+1) ((z-1)/2)^r.
/// A Gamma argument on a pole raises PoleError naming the term; otherwise the
/// ratios are evaluated as the finite products (r+rho+1)_{n-r} (n+rho+nu+1)_r / n!.
inline cplx jacobi_gamma(const JacobiParams& p, cplx z) {
  detail::check_jacobi(p);
  const int n = p.n;
  if (n == 0) return 1.0;
  const double nd = n;
  const auto check_pole = [](cplx arg, const std::string& where) {
    if (const long k = detail::nonpositive_integer_at(arg); k <= 0)
      throw PoleError("jacobi_gamma " + where + ": Gamma argument at pole " + std::to_string(k), k);
  };
  check_pole(nd + p.rho + 1.0, "prefactor");
  check_pole(nd + p.rho + p.nu + 1.0, "prefactor");
  const cplx w = (z - 1.0) / 2.0;
  CompensatedSum acc;
  cplx rising = 1.0;  // (n+rho+nu+1)_r
  cplx wr = 1.0;
  for (int r = 0; r <= n; ++r) {
    const double rd = r;
    check_pole(nd + p.rho + p.nu + rd + 1.0, "term r=" + std::to_string(r));
    check_pole(rd + p.rho + 1.0, "term r=" + std::to_string(r));
    cplx head = 1.0;  // (r+rho+1)_{n-r}
    for (int j = r; j < n; ++j) head *= static_cast<double>(j) + p.rho + 1.0;
    acc.add(binom_falling(nd, r) * head * rising * wr);
    rising *= nd + p.rho + p.nu + 1.0 + rd;
    wr *= w;
  }
  return acc.value() * rgamma(nd + 1.0);
}

enum class ShiftedForm { Mixed, Power };

/// Coefficients A_k of s^{n-k}(1-s)^k (k = 0..n) in P_n^{(rho,nu)}(1-2s):
/// A_k = (-1)^{n+k} Gamma(n+rho+1) Gamma(n+nu+1) / (k!(n-k)! Gamma(k+nu+1) Gamma(n+rho-k+1)).
/// The Gamma ratios are expanded as falling factorials so integer parameters cause no poles.
inline std::vector<cplx> jacobi_coeffs_mixed(const JacobiParams& p) {
  detail::check_jacobi(p);
  const int n = p.n;
  const double nd = n;
  std::vector<cplx> c(n + 1);
  for (int k = 0; k <= n; ++k) {
    cplx v = 1.0;
    for (int j = 0; j < k; ++j) v *= (nd + p.rho - static_cast<double>(j));
    for (int j = 0; j < n - k; ++j) v *= (nd + p.nu - static_cast<double>(j));
    v *= rgamma(static_cast<double>(k) + 1.0) * rgamma(nd - k + 1.0);
    c[k] = (((n + k) % 2 == 0) ? 1.0 : -1.0) * v;
  }
  return c;
}

namespace detail {
using lcplx = std::complex<long double>;

// Power-basis coefficients carry cancellation of order C(n,r)(n+rho+nu+1)_r / r!, so
// they are accumulated in long double and only rounded on output.
inline std::vector<lcplx> jacobi_coeffs_power_ld(const JacobiParams& p) {
  const int n = p.n;
  const long double nd = n;
  const lcplx rho(p.rho.real(), p.rho.imag()), nu(p.nu.real(), p.nu.imag());
  std::vector<lcplx> c(n + 1);
  for (int r = 0; r <= n; ++r) {
    lcplx v = 1.0L;
    for (int j = 0; j < n - r; ++j) v *= (nd + rho - static_cast<long double>(j));
    for (int j = 0; j < r; ++j) v *= (nd + rho + nu + 1.0L + static_cast<long double>(j));
    for (int j = 2; j <= r; ++j) v /= static_cast<long double>(j);
    for (int j = 2; j <= n - r; ++j) v /= static_cast<long double>(j);
    c[r] = ((r % 2 == 0) ? 1.0L : -1.0L) * v;
  }
  return c;
}
}  // namespace detail

/// Coefficients B_r of s^r (r = 0..n) in P_n^{(rho,nu)}(1-2s):
/// B_r = (-1)^r Gamma(n+rho+1) Gamma(n+rho+nu+r+1) / (Gamma(n+rho+nu+1) r!(n-r)! Gamma(rho+r+1)).
inline std::vector<cplx> jacobi_coeffs_power(const JacobiParams& p) {
  detail::check_jacobi(p);
  std::vector<cplx> c;
  for (const auto& v : detail::jacobi_coeffs_power_ld(p))
    c.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  return c;
}

/// P_n^{(rho,nu)}(1-2s) from its expansion in the variable s: Mixed uses the
/// s^{n-k}(1-s)^k form, Power the plain power form. Both are taken with unit shape
/// factor (q = 1).
inline cplx jacobi_shifted(const JacobiParams& p, cplx s, ShiftedForm which) {
  detail::check_jacobi(p);
  const int n = p.n;
  CompensatedSum acc;
  if (which == ShiftedForm::Mixed) {
    const auto c = jacobi_coeffs_mixed(p);
    for (int k = 0; k <= n; ++k) acc.add(c[k] * detail::ipow(s, n - k) * detail::ipow(1.0 - s, k));
  } else {
    const auto c = detail::jacobi_coeffs_power_ld(p);
    const detail::lcplx sl(s.real(), s.imag());
    detail::lcplx h = 0.0L;
    for (int r = n; r >= 0; --r) h = h * sl + c[r];
    return {static_cast<double>(h.real()), static_cast<double>(h.imag())};
  }
  return acc.value();
}

/// Gauss hypergeometric function 2F1(a,b;c;z) on the closed unit disk.
inline cplx gauss_2f1(cplx a, cplx b, cplx c, cplx z) {
  constexpr double kStop = 1e-14;
  constexpr long kMaxTerms = 1000000;
  const long na = detail::nonpositive_integer_at(a);
  const long nb = detail::nonpositive_integer_at(b);
  const bool terminating = na <= 0 || nb <= 0;
  // Number of nonzero terms when a or b is -m: m + 1 (the smaller m wins).
  long terms_if_terminating = 0;
  if (terminating) terms_if_terminating = 1 - std::max(na <= 0 ? na : kMaxTerms * -1, nb <= 0 ? nb : kMaxTerms * -1);

  if (const long nc = detail::nonpositive_integer_at(c); nc <= 0) {
    // Series hits 0 in the denominator at index 1-nc unless it terminates first.
    if (!(terminating && terms_if_terminating <= 1 - nc))
      throw PoleError("gauss_2f1: c is a nonpositive integer", nc);
  }
  if (terminating) {
    CompensatedSum acc;
    cplx term = 1.0;
    acc.add(term);
    for (long k = 0; k + 1 < terms_if_terminating; ++k) {
      const double kd = static_cast<double>(k);
      term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * z;
      acc.add(term);
    }
    return acc.value();
  }
  const double az = std::abs(z);
  if (az > 1.0 + 1e-15) throw DomainError("gauss_2f1: |z| > 1 is outside the series domain");
  const bool on_circle = az >= 1.0 - 1e-15;
  if (on_circle && (c - a - b).real() <= 0.0)
    throw DomainError("gauss_2f1: |z| = 1 requires Re(c-a-b) > 0");
  if (std::abs(z - 1.0) <= 1e-15) return std::exp(clgamma(c) + clgamma(c - a - b) - clgamma(c - a) - clgamma(c - b));

  CompensatedSum acc;
  cplx term = 1.0;
  acc.add(term);
  double prev_mag = 1.0;
  long growth = 0;
  for (long k = 0; k < kMaxTerms; ++k) {
    const double kd = static_cast<double>(k);
    term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * z;
    acc.add(term);
    const double mag = std::abs(term);
    if (mag <= kStop * std::abs(acc.value()) && k > 2) return acc.value();
    growth = (mag > prev_mag && k > 64) ? growth + 1 : 0;
    if (growth > 1000) throw DomainError("gauss_2f1: series terms grow; divergent");
    prev_mag = mag;
  }
  throw NonConvergenceError("gauss_2f1: series did not reach 1e-14 within 1e6 terms");
}

/// Kummer confluent hypergeometric function 1F1(a;b;z), |z| <= 30.
inline cplx kummer_1f1(cplx a, cplx b, cplx z) {
  if (const long nb = detail::nonpositive_integer_at(b); nb <= 0)
    throw PoleError("kummer_1f1: b is a nonpositive integer", nb);
  if (std::abs(z) > 30.0) throw DomainError("kummer_1f1: |z| > 30 is outside the series scope");
  // Kummer's transformation keeps the series free of cancellation for Re z < 0.
  if (z.real() < 0.0 && detail::nonpositive_integer_at(a) > 0)
    return std::exp(z) * kummer_1f1(b - a, b, -z);
  CompensatedSum acc;
  cplx term = 1.0;
  acc.add(term);
  for (int k = 0; k < 100000; ++k) {
    const double kd = k;
    term *= (a + kd) / ((b + kd) * (kd + 1.0)) * z;
    acc.add(term);
    if (term == 0.0) return acc.value();
    if (std::abs(term) <= 1e-16 * std::abs(acc.value()) && kd > std::abs(z)) return acc.value();
  }
  throw NonConvergenceError("kummer_1f1: series did not converge");
}

/// d/dz 1F1(a;b;z) = (a/b) 1F1(a+1;b+1;z).
inline cplx kummer_1f1_deriv(cplx a, cplx b, cplx z) { return a / b * kummer_1f1(a + 1.0, b + 1.0, z); }

/// Quadrature over (0,1) for integrands with algebraic endpoint behaviour
/// f(s) ~ s^{p0} near 0 and (1-s)^{p1} near 1.
struct QuadResult {
  cplx value;
  double error;
  int evaluations;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(const F& g, double lo, double hi) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  const cplx fc = g(c);
  cplx k = fc * kWgk[7];
  cplx gs = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const cplx f1 = g(c - dx), f2 = g(c + dx);
    k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gs += kWg[j / 2] * (f1 + f2);
  }
  k *= h;
  gs *= h;
  return {lo, hi, k, std::abs(k - gs)};
}

template <class F>
QuadResult adaptive(const F& g, double lo, double hi, double tol, int max_segments) {
  std::priority_queue<Segment> heap;
  Segment first = gk15(g, lo, hi);
  heap.push(first);
  cplx total = first.value;
  double err = first.error;
  int evals = 15;
  while (err > tol * std::max(1.0, std::abs(total)) && static_cast<int>(heap.size()) < max_segments) {
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    Segment l = gk15(g, worst.lo, mid), r = gk15(g, mid, worst.hi);
    evals += 30;
    total += l.value + r.value - worst.value;
    err += l.error + r.error - worst.error;
    heap.push(l);
    heap.push(r);
  }
  // Re-sum to shed accumulated update error.
  CompensatedSum acc;
  double e = 0.0;
  while (!heap.empty()) {
    acc.add(heap.top().value);
    e += heap.top().error;
    heap.pop();
  }
  return {acc.value(), e, evals};
}

}  // namespace detail

/// Integrates f over (0,1). The integrand receives both s and 1-s so that the
/// factor (1-s)^{p1} stays accurate near s = 1. The endpoint exponents p0, p1
/// drive a power substitution s = u^k/2 (and its mirror) that removes the
/// endpoint singularity.
inline QuadResult quad01(const std::function<cplx(double, double)>& f, cplx p0, cplx p1,
                         double tol = 1e-10) {
  if (p0.real() <= -1.0 || p1.real() <= -1.0)
    throw DomainError("quad01: endpoint exponent with Re <= -1 is not integrable");
  const auto kappa = [](cplx p) { return std::max(1.0, 2.0 / (p.real() + 1.0)); };
  const double k0 = kappa(p0), k1 = kappa(p1);
  // Left half: s = u^k0 / 2, ds = k0 u^{k0-1}/2 du.
  const auto left = [&](double u) -> cplx {
    const double s = 0.5 * std::pow(u, k0);
    if (s <= 0.0) return 0.0;
    return f(s, 1.0 - s) * (0.5 * k0 * std::pow(u, k0 - 1.0));
  };
  const auto right = [&](double u) -> cplx {
    const double t = 0.5 * std::pow(u, k1);
    if (t <= 0.0) return 0.0;
    return f(1.0 - t, t) * (0.5 * k1 * std::pow(u, k1 - 1.0));
  };
  const QuadResult a = detail::adaptive(left, 0.0, 1.0, tol * 0.5, 4000);
  const QuadResult b = detail::adaptive(right, 0.0, 1.0, tol * 0.5, 4000);
  return {a.value + b.value, a.error + b.error, a.evaluations + b.evaluations};
}

inline QuadResult quad01(const std::function<cplx(double)>& f, cplx p0, cplx p1, double tol = 1e-10) {
  return quad01([&f](double s, double) { return f(s); }, p0, p1, tol);
}

/// Integral of s^{p0} (1-s)^{p1} g(s) over (0,1), with the power factors
/// evaluated from accurate s and 1-s.
inline QuadResult quad01_weighted(const std::function<cplx(double)>& g, cplx p0, cplx p1,
                                  double tol = 1e-10) {
  return quad01(
      [&](double s, double t) { return std::pow(cplx(s), p0) * std::pow(cplx(t), p1) * g(s); }, p0, p1,
      tol);
}

}  // namespace nudirac
