#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nudirac/types.hpp"

namespace nudirac {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A math-domain violation: argument outside the region where a formula holds.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation point lies on (or within tolerance of) a pole of the potential.
class SingularPointError : public DomainError {
 public:
  SingularPointError(const std::string& what, cplx pole) : DomainError(what), pole_(pole) {}
  cplx pole() const { return pole_; }

 private:
  cplx pole_;
};

/// Gamma-type pole: argument at a nonpositive integer.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, long nearest) : DomainError(what), nearest_(nearest) {}
  long nearest() const { return nearest_; }

 private:
  long nearest_;
};

/// The NU construction cannot produce a closed-form spectrum (q = 0).
class NuInapplicableError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// No candidate pi(s) satisfies the tau' selection rule.
class NoBoundBranchError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The radicand is not a perfect square at the supplied k.
class PerfectSquareError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// V0^2 + kappa_n^2 vanishes in the spectrum formula.
class SingularCouplingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// State cannot be normalized (an endpoint exponent is not integrable).
class NonNormalizableError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Iterative method did not reach its tolerance.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::vector<cplx> trace = {})
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<cplx>& trace() const { return trace_; }

 private:
  std::vector<cplx> trace_;
};

/// API used outside its documented preconditions (wrong variant, bad n, ...).
class MisuseError : public Error {
 public:
  using Error::Error;
};

}  // namespace nudirac
