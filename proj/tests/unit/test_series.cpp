#include <cmath>

#include "diamond/errors.hpp"
#include "diamond/series.hpp"
#include "doctest.h"

using namespace diamond;

TEST_CASE("Euler-Maclaurin tail of a geometric series") {
  // Slow decay is the intended regime; the unit-step differences degrade as
  // the decay rate approaches 1.
  for (double d : {1e-4, 0.01, 0.1, 0.2}) {
    for (double n0 : {2.0, 10.0, 500.0}) {
      const auto t = series::euler_maclaurin_tail([d](double n) { return std::exp(-d * n); }, n0, d);
      const double exact = std::exp(-d * n0) / (-std::expm1(-d));
      CAPTURE(d);
      CAPTURE(n0);
      CHECK(std::fabs(t.value - exact) <= std::max(t.error, 1e-14 * exact));
      CHECK(std::fabs(t.value - exact) < 1e-6 * exact);
    }
  }
}

TEST_CASE("tail of a slowly varying polynomial-times-exponential") {
  // sum_{n>=n0} n x^n = x^{n0} (n0 - (n0 - 1) x) / (1 - x)^2
  const double x = 0.97, d = -std::log(x);
  const double n0 = 40.0;
  const auto t = series::euler_maclaurin_tail([x](double n) { return n * std::pow(x, n); }, n0, d);
  const double exact = std::pow(x, n0) * (n0 - (n0 - 1.0) * x) / ((1.0 - x) * (1.0 - x));
  CHECK(t.value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("argument validation") {
  auto f = [](double n) { return std::exp(-n); };
  CHECK_THROWS_AS(series::euler_maclaurin_tail(f, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(series::euler_maclaurin_tail(f, 5.0, 0.0), InvalidArgument);
}
