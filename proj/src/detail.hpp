#pragma once

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace diamond::detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Hyperbolic quantities of the squeezing parameter, each computed in the
// form that keeps full relative precision at both ends of the r range.
struct RParams {
  double r;
  double x;       // tanh^2 r
  double ln_x;    // 2 ln tanh r
  double inv_c2;  // 1 / cosh^2 r
  double ln_2c2;  // ln(2 cosh^2 r)
  double sinh;    // sinh r

  static RParams make(double r) {
    RParams p{};
    p.r = r;
    const double t = std::tanh(r);
    p.x = t * t;
    p.ln_x = r < 0.5 ? 2.0 * std::log(t) : 2.0 * std::log1p(-2.0 / (std::exp(2.0 * r) + 1.0));
    const double c = std::cosh(r);
    p.inv_c2 = 1.0 / (c * c);
    p.ln_2c2 = 2.0 * r + 2.0 * std::log1p(std::exp(-2.0 * r)) - std::numbers::ln2;
    p.sinh = std::sinh(r);
    return p;
  }

  // ln(1 + n / sinh^2 r), finite for any r > 0.
  double ln_one_plus_n_over_s2(double n) const {
    if (n == 0.0) return 0.0;
    if (sinh >= 1.0) return std::log1p(n / (sinh * sinh));
    return std::log(n + sinh * sinh) - 2.0 * std::log(sinh);
  }
};

}  // namespace diamond::detail
