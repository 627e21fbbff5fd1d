#include <cmath>

#include "kernels_common.hpp"

namespace diamond::kernels::scalar {

namespace {

using namespace common;

void rindler_to_diamond(const double* th, const double* xh, double* t, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) r2d(th[i], xh[i], t[i], x[i]);
}

void diamond_to_rindler(const double* th, const double* xh, double* t, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) d2r(th[i], xh[i], t[i], x[i]);
}

void lightcone_map(const double* v, const double* u, double* vt, double* ut, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) lc(v[i], u[i], vt[i], ut[i]);
}

Block block_at(const SpectralConstants& k, std::size_t n) {
  if (n == 0) return block_zero(k);
  return block_from_power(k, std::pow(k.x, static_cast<double>(n - 1)), static_cast<double>(n));
}

void ppt_pairs(const SpectralConstants& k, std::size_t lo, std::size_t hi, double* plus, double* minus) {
  for (std::size_t n = lo; n < hi; ++n) {
    const Block q = block_at(k, n);
    plus[n - lo] = lambda_plus(k, q);
    minus[n - lo] = -abs_lambda_minus(k, q);
  }
}

double sum_abs_lambda_minus(const SpectralConstants& k, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t n = lo; n < hi; ++n) s += abs_lambda_minus(k, block_at(k, n));
  return s;
}

double sigma_series(const SpectralConstants& k, std::size_t lo, std::size_t hi) {
  double s = 0.0;
  for (std::size_t n = lo; n < hi; ++n) s += sigma_term(k, block_at(k, n));
  return s;
}

}  // namespace

const KernelTable kTable{
    Isa::Scalar, rindler_to_diamond, diamond_to_rindler, lightcone_map, ppt_pairs, sum_abs_lambda_minus, sigma_series,
};

}  // namespace diamond::kernels::scalar
