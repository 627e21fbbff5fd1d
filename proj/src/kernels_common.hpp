#pragma once

// Per-element formulas shared by every kernel variant. The SIMD files
// vectorize exactly these expressions in the same operation order.

#include <cmath>
#include <limits>

#include "diamond/geometry.hpp"
#include "diamond/kernels.hpp"

namespace diamond::kernels::common {

inline constexpr double kTol = geometry::kSingularTolerance;
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Elements between re-anchoring the running power x^n with std::pow.
inline constexpr std::size_t kAnchorStride = 256;

inline void r2d(double th, double xh, double& t, double& x) {
  const double vt = th + xh;
  const double ut = th - xh;
  const double fa = 1.0 + vt;
  const double fb = 1.0 - ut;
  if (std::fabs(fa) < kTol || std::fabs(fb) < kTol) {
    t = x = kNaN;
    return;
  }
  const double f = fa * fb;
  const double n = 1.0 + vt * ut;
  t = (th + th) / f;
  x = -n / f;
}

inline void d2r(double th, double xh, double& t, double& x) {
  const double v = th + xh;
  const double u = th - xh;
  const double fa = 1.0 + u;
  const double fb = 1.0 - v;
  if (std::fabs(fa) < kTol || std::fabs(fb) < kTol) {
    t = x = kNaN;
    return;
  }
  const double f = fa * fb;
  const double n = 1.0 + v * u;
  t = (th + th) / f;
  x = n / f;
}

inline void lc(double v, double u, double& vt, double& ut) {
  const double a = 1.0 - v;
  const double b = 1.0 + u;
  if (std::fabs(a) < kTol || std::fabs(b) < kTol) {
    vt = ut = kNaN;
    return;
  }
  vt = (1.0 + v) / a;
  ut = -(1.0 - u) / b;
}

// Block quantities for n: A = x^n T_n and B = 2 x^n / c, with p = x^{n-1}.
struct Block {
  double a, b, root;
};

// sqrt(a^2 + b^2) without squaring tiny or huge operands.
inline double scaled_root(double a, double b) {
  const double m = a > b ? a : b;
  const double s = a > b ? b : a;
  if (!(m > 0.0)) return 0.0;
  const double q = s / m;
  return m * std::sqrt(1.0 + q * q);
}

inline Block block_from_power(const SpectralConstants& k, double p, double n) {
  const double a = p * (n * k.inv_c2 + k.x * k.x);
  const double b = 2.0 * (p * k.x) * std::sqrt(k.inv_c2);
  return {a, b, scaled_root(a, b)};
}

inline Block block_zero(const SpectralConstants& k) {
  const double a = k.x;
  const double b = 2.0 * std::sqrt(k.inv_c2);
  return {a, b, scaled_root(a, b)};
}

inline double lambda_plus(const SpectralConstants& k, const Block& q) { return 0.25 * k.inv_c2 * (q.a + q.root); }

// |lambda_-| without the cancellation in A - sqrt(A^2 + B^2).
inline double abs_lambda_minus(const SpectralConstants& k, const Block& q) {
  const double den = q.root + q.a;
  if (!(den > 0.0)) return 0.0;
  return 0.25 * k.inv_c2 * (q.b * (q.b / den));
}

inline double sigma_term(const SpectralConstants& k, const Block& q) { return 0.5 * k.inv_c2 * q.root; }

}  // namespace diamond::kernels::common
