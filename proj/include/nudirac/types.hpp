#pragma once

#include <complex>
#include <numbers>

namespace nudirac {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

/// Relative comparison where the magnitude exceeds one, absolute otherwise.
inline double scaled_error(cplx got, cplx want) {
  const double mag = std::abs(want);
  return std::abs(got - want) / (mag > 1.0 ? mag : 1.0);
}

inline bool is_real(cplx z, double tol = 0.0) { return std::abs(z.imag()) <= tol; }

}  // namespace nudirac
