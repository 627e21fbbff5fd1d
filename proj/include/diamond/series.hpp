#pragma once

#include <functional>

namespace diamond::series {

struct TailSum {
  double value = 0.0;
  double error = 0.0;
};

/// sum_{n >= n0} f(n) by Euler-Maclaurin: the integral from n0 to infinity
/// plus the f(n0)/2, f'(n0) and f'''(n0) end corrections.
///
/// Meant for terms that vary slowly on the unit scale and decay like
/// exp(-decay * n); the integral is taken in the variable v = decay (n - n0).
/// Derivatives come from central differences with unit step, so n0 >= 2.
TailSum euler_maclaurin_tail(const std::function<double(double)>& f, double n0, double decay);

}  // namespace diamond::series
