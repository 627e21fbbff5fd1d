#pragma once

// Confluent hypergeometric M(a, b, z) in the regime the Bogoliubov closed
// forms need (complex a, small integer b, imaginary z), and an adaptive
// Gauss-Kronrod engine for complex-valued integrands on finite intervals.

#include <complex>
#include <cstddef>
#include <functional>

namespace diamond::specfun {

using cplx = std::complex<double>;

struct KummerParams {
  cplx a;
  cplx b;
  cplx z;
};

struct KummerConfig {
  double z_cap = 200.0;
  std::size_t max_terms = 100000;
};

struct KummerEval {
  cplx value;
  std::size_t terms = 0;
  int digits = 16;         // working precision of the accepted pass
  double condition = 1.0;  // max |term| / |M|
};

/// M(a, b, z) = sum_k (a)_k / (b)_k z^k / k!, relative error <= 1e-10.
///
/// The series is summed in double first. When the largest term dwarfs the
/// result (imaginary z makes the series alternate in phase) it is re-summed
/// with enough decimal digits to absorb the cancellation.
KummerEval kummer_m_eval(const KummerParams& p, const KummerConfig& cfg = {});

inline cplx kummer_m(const KummerParams& p, const KummerConfig& cfg = {}) { return kummer_m_eval(p, cfg).value; }

struct QuadratureSpec {
  double lo = 0.0;
  double hi = 1.0;
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_subdivisions = 20000;
  /// Dominant angular frequency of the integrand; the interval is pre-split
  /// so that each initial panel spans at most about half a period.
  double oscillation_hint = 0.0;
};

struct QuadratureResult {
  cplx value;
  double error = 0.0;
  std::size_t subdivisions = 0;
  std::size_t evaluations = 0;
};

using Integrand = std::function<cplx(double)>;

/// Adaptive 21-point Gauss-Kronrod. Throws NonConvergence carrying the best
/// estimate when the subdivision budget runs out.
QuadratureResult integrate(const Integrand& f, const QuadratureSpec& spec);

inline cplx oscillatory_integral(const Integrand& f, const QuadratureSpec& spec) { return integrate(f, spec).value; }

}  // namespace diamond::specfun
