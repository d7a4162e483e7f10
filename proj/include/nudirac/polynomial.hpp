#pragma once

#include <algorithm>
#include <cmath>

#include "nudirac/types.hpp"

namespace nudirac {

/// Polynomial of degree at most two in the monomial basis: c0 + c1 s + c2 s^2.
struct Poly2 {
  cplx c0{}, c1{}, c2{};

  constexpr cplx operator()(cplx s) const { return c0 + s * (c1 + s * c2); }

  constexpr Poly2 derivative() const { return {c1, 2.0 * c2, 0.0}; }

  constexpr cplx second_derivative() const { return 2.0 * c2; }

  double scale() const { return std::max({std::abs(c0), std::abs(c1), std::abs(c2)}); }

  /// Degree with coefficients below `tol * scale()` treated as zero; -1 for the zero polynomial.
  int degree(double tol = 0.0) const {
    const double cut = tol * scale();
    if (std::abs(c2) > cut) return 2;
    if (std::abs(c1) > cut) return 1;
    if (std::abs(c0) > cut) return 0;
    return -1;
  }

  friend constexpr Poly2 operator+(const Poly2& a, const Poly2& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend constexpr Poly2 operator-(const Poly2& a, const Poly2& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  friend constexpr Poly2 operator*(cplx k, const Poly2& p) { return {k * p.c0, k * p.c1, k * p.c2}; }

  /// Product of two polynomials of degree at most one.
  static constexpr Poly2 product_linear(const Poly2& a, const Poly2& b) {
    return {a.c0 * b.c0, a.c0 * b.c1 + a.c1 * b.c0, a.c1 * b.c1};
  }

  /// Largest coefficient difference.
  friend double max_coeff_diff(const Poly2& a, const Poly2& b) {
    return std::max({std::abs(a.c0 - b.c0), std::abs(a.c1 - b.c1), std::abs(a.c2 - b.c2)});
  }
};

}  // namespace nudirac
