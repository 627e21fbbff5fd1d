#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "diamond/kernels.hpp"
#include "doctest.h"

using namespace diamond::kernels;

namespace {

bool close(double a, double b, double rel) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b)) + 1e-300;
}

// Odd length so the vector loops also exercise their scalar remainder.
constexpr std::size_t kN = 4099;

void compare_geometry(const KernelTable& a, const KernelTable& b) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  std::vector<double> p(kN), q(kN);
  for (std::size_t i = 0; i < kN; ++i) {
    p[i] = d(rng);
    q[i] = d(rng);
  }
  // Exact singular points must come out as NaN from both.
  p[7] = 0.5;
  q[7] = 0.5;
  p[8] = -0.5;
  q[8] = -0.5;
  std::vector<double> a1(kN), a2(kN), b1(kN), b2(kN);
  a.rindler_to_diamond(p.data(), q.data(), a1.data(), a2.data(), kN);
  b.rindler_to_diamond(p.data(), q.data(), b1.data(), b2.data(), kN);
  for (std::size_t i = 0; i < kN; ++i) {
    CHECK(close(a1[i], b1[i], 1e-14));
    CHECK(close(a2[i], b2[i], 1e-14));
  }
  CHECK(std::isnan(a1[8]));
  a.diamond_to_rindler(p.data(), q.data(), a1.data(), a2.data(), kN);
  b.diamond_to_rindler(p.data(), q.data(), b1.data(), b2.data(), kN);
  for (std::size_t i = 0; i < kN; ++i) {
    CHECK(close(a1[i], b1[i], 1e-14));
    CHECK(close(a2[i], b2[i], 1e-14));
  }
  CHECK(std::isnan(a1[7]));
  a.lightcone_map(p.data(), q.data(), a1.data(), a2.data(), kN);
  b.lightcone_map(p.data(), q.data(), b1.data(), b2.data(), kN);
  for (std::size_t i = 0; i < kN; ++i) {
    CHECK(close(a1[i], b1[i], 1e-14));
    CHECK(close(a2[i], b2[i], 1e-14));
  }
}

void compare_spectral(const KernelTable& a, const KernelTable& b) {
  for (double r : {1e-4, 0.3, 1.0, 4.0, 11.0}) {
    const auto k = SpectralConstants::from_r(r);
    std::vector<double> ap(kN), am(kN), bp(kN), bm(kN);
    a.ppt_pairs(k, 3, 3 + kN, ap.data(), am.data());
    b.ppt_pairs(k, 3, 3 + kN, bp.data(), bm.data());
    for (std::size_t i = 0; i < kN; ++i) {
      CHECK(close(ap[i], bp[i], 1e-14));
      CHECK(close(am[i], bm[i], 1e-14));
    }
    CHECK(close(a.sum_abs_lambda_minus(k, 0, 20001), b.sum_abs_lambda_minus(k, 0, 20001), 1e-13));
    CHECK(close(a.sigma_series(k, 0, 20001), b.sigma_series(k, 0, 20001), 1e-13));
    CHECK(close(a.sigma_series(k, 5, 6), b.sigma_series(k, 5, 6), 1e-14));
  }
}

}  // namespace

TEST_CASE("scalar kernels are always available") {
  CHECK(available(Isa::Scalar));
  CHECK(table(Isa::Scalar).isa == Isa::Scalar);
  CHECK(to_string(Isa::Scalar) == "scalar");
}

TEST_CASE("scalar kernels against direct formulas") {
  const auto& s = table(Isa::Scalar);
  const double r = 0.9;
  const auto k = SpectralConstants::from_r(r);
  CHECK(k.x == doctest::Approx(std::tanh(r) * std::tanh(r)));
  CHECK(k.inv_c2 == doctest::Approx(1.0 / (std::cosh(r) * std::cosh(r))));
  std::vector<double> plus(6), minus(6);
  s.ppt_pairs(k, 0, 6, plus.data(), minus.data());
  const double c2 = std::cosh(r) * std::cosh(r), x = k.x;
  for (int n = 0; n < 6; ++n) {
    const double A = n == 0 ? x : std::pow(x, n - 1) * (n / c2 + x * x);
    const double B = 2.0 * std::pow(x, n) / std::cosh(r);
    const double root = std::sqrt(A * A + B * B);
    CHECK(plus[n] == doctest::Approx((A + root) / (4.0 * c2)).epsilon(1e-14));
    CHECK(minus[n] == doctest::Approx((A - root) / (4.0 * c2)).epsilon(1e-10));
  }
  double sum = 0.0;
  for (double m : minus) sum -= m;
  CHECK(s.sum_abs_lambda_minus(k, 0, 6) == doctest::Approx(sum).epsilon(1e-13));

  double t[1] = {0.0}, xx[1] = {1.0}, ot[1], ox[1];
  s.rindler_to_diamond(t, xx, ot, ox, 1);  // corner of the wedge -> centre
  CHECK(std::fabs(ot[0]) < 1e-15);
  CHECK(std::fabs(ox[0]) < 1e-15);
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!available(Isa::Avx2)) {
    MESSAGE("AVX2 unavailable; equivalence test skipped");
    CHECK(table(Isa::Avx2).isa == Isa::Scalar);
    return;
  }
  const auto& v = table(Isa::Avx2);
  CHECK(v.isa == Isa::Avx2);
  compare_geometry(table(Isa::Scalar), v);
  compare_spectral(table(Isa::Scalar), v);
}

TEST_CASE("active table honours DIAMOND_SIMD") {
  const char* env = std::getenv("DIAMOND_SIMD");
  const auto& a = active();
  if (env && std::string(env) == "scalar") CHECK(a.isa == Isa::Scalar);
  if (!env && available(Isa::Avx2)) CHECK(a.isa == Isa::Avx2);
}
