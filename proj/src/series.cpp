#include "diamond/series.hpp"

#include <cmath>

#include "diamond/errors.hpp"
#include "diamond/specfun.hpp"

namespace diamond::series {

namespace {
// exp(-80) sits far below double resolution relative to the integral.
constexpr double kDecayLengths = 80.0;
}  // namespace

TailSum euler_maclaurin_tail(const std::function<double(double)>& f, double n0, double decay) {
  if (!(decay > 0.0) || !std::isfinite(decay)) throw InvalidArgument("Euler-Maclaurin tail needs a positive decay rate");
  if (!(n0 >= 2.0)) throw InvalidArgument("Euler-Maclaurin tail needs n0 >= 2");

  specfun::QuadratureSpec spec;
  spec.lo = 0.0;
  spec.hi = kDecayLengths;
  spec.rel_tol = 1e-13;
  const auto q = specfun::integrate([&](double v) { return specfun::cplx(f(n0 + v / decay), 0.0); }, spec);
  const double integral = q.value.real() / decay;

  const double fm2 = f(n0 - 2.0);
  const double fm1 = f(n0 - 1.0);
  const double f0 = f(n0);
  const double fp1 = f(n0 + 1.0);
  const double fp2 = f(n0 + 2.0);
  const double d3 = 0.5 * (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2);
  // Five-point stencil; the plain central difference would leave an
  // f'''/6 error in f', larger than the f''' correction itself.
  const double d1 = 0.5 * (fp1 - fm1) - d3 / 6.0;

  const double last = d3 / 720.0;
  TailSum out;
  out.value = integral + 0.5 * f0 - d1 / 12.0 + last;
  out.error = std::fabs(last) + q.error / decay + 1e-15 * std::fabs(out.value);
  return out;
}

}  // namespace diamond::series
