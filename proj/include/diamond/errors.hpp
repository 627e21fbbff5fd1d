#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace diamond {

/// Base class for every numeric failure raised by the library. The CLI maps
/// these onto exit status 1 with a JSON error record; `kind()` is the stable
/// machine-readable tag.
class NumericError : public std::runtime_error {
 public:
  NumericError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// The point sits on (or within tolerance of) a set where a conformal map
/// sends it to infinity.
class SingularPoint : public NumericError {
 public:
  explicit SingularPoint(const std::string& what) : NumericError("SingularPoint", what) {}
};

/// The point lies on one of the lines t = ±(x ± α), where (η, ξ) diverge.
class OnHorizon : public NumericError {
 public:
  explicit OnHorizon(const std::string& what) : NumericError("OnHorizon", what) {}
};

/// Argument outside the domain in which an algorithm has been validated.
class DomainCap : public NumericError {
 public:
  explicit DomainCap(const std::string& what) : NumericError("DomainCap", what) {}
};

/// A mode was evaluated outside its support with strict checking enabled.
class OutOfSupport : public NumericError {
 public:
  explicit OutOfSupport(const std::string& what) : NumericError("OutOfSupport", what) {}
};

/// The retained Fock-space weight misses more than the requested tolerance.
class TruncationTooSmall : public NumericError {
 public:
  TruncationTooSmall(const std::string& what, double tail)
      : NumericError("TruncationTooSmall", what), tail_(tail) {}
  double tail() const noexcept { return tail_; }

 private:
  double tail_;
};

/// An iterative method stopped before reaching its tolerance. Carries the
/// best available estimate and its error bound.
class NonConvergence : public NumericError {
 public:
  NonConvergence(const std::string& what, std::complex<double> estimate, double error_bound)
      : NumericError("NonConvergence", what), estimate_(estimate), error_bound_(error_bound) {}

  std::complex<double> estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  std::complex<double> estimate_;
  double error_bound_;
};

/// Invalid argument to a library entry point (bad chart parameters and so on).
class InvalidArgument : public NumericError {
 public:
  explicit InvalidArgument(const std::string& what) : NumericError("InvalidArgument", what) {}
};

}  // namespace diamond
