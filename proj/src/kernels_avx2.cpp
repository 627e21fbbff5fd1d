// AVX2 variants. Built with -mavx2 only; reached through the dispatcher
// after a CPUID check. Contraction is disabled project-wide so every lane
// rounds exactly like the scalar reference except for the running power.

#include <immintrin.h>

#include <cmath>

#include "kernels_common.hpp"

namespace diamond::kernels::avx2 {

namespace {

using namespace common;

inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline __m256d near_zero(__m256d v) { return _mm256_cmp_pd(vabs(v), _mm256_set1_pd(kTol), _CMP_LT_OQ); }

void rindler_to_diamond(const double* th, const double* xh, double* t, double* x, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d nan = _mm256_set1_pd(kNaN);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(th + i);
    const __m256d b = _mm256_loadu_pd(xh + i);
    const __m256d vt = _mm256_add_pd(a, b);
    const __m256d ut = _mm256_sub_pd(a, b);
    const __m256d fa = _mm256_add_pd(one, vt);
    const __m256d fb = _mm256_sub_pd(one, ut);
    const __m256d bad = _mm256_or_pd(near_zero(fa), near_zero(fb));
    const __m256d f = _mm256_mul_pd(fa, fb);
    const __m256d nn = _mm256_add_pd(one, _mm256_mul_pd(vt, ut));
    const __m256d tt = _mm256_div_pd(_mm256_add_pd(a, a), f);
    const __m256d xx = _mm256_xor_pd(_mm256_div_pd(nn, f), _mm256_set1_pd(-0.0));
    _mm256_storeu_pd(t + i, _mm256_blendv_pd(tt, nan, bad));
    _mm256_storeu_pd(x + i, _mm256_blendv_pd(xx, nan, bad));
  }
  for (; i < n; ++i) r2d(th[i], xh[i], t[i], x[i]);
}

void diamond_to_rindler(const double* th, const double* xh, double* t, double* x, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d nan = _mm256_set1_pd(kNaN);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(th + i);
    const __m256d b = _mm256_loadu_pd(xh + i);
    const __m256d v = _mm256_add_pd(a, b);
    const __m256d u = _mm256_sub_pd(a, b);
    const __m256d fa = _mm256_add_pd(one, u);
    const __m256d fb = _mm256_sub_pd(one, v);
    const __m256d bad = _mm256_or_pd(near_zero(fa), near_zero(fb));
    const __m256d f = _mm256_mul_pd(fa, fb);
    const __m256d nn = _mm256_add_pd(one, _mm256_mul_pd(v, u));
    _mm256_storeu_pd(t + i, _mm256_blendv_pd(_mm256_div_pd(_mm256_add_pd(a, a), f), nan, bad));
    _mm256_storeu_pd(x + i, _mm256_blendv_pd(_mm256_div_pd(nn, f), nan, bad));
  }
  for (; i < n; ++i) d2r(th[i], xh[i], t[i], x[i]);
}

void lightcone_map(const double* v, const double* u, double* vt, double* ut, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d nan = _mm256_set1_pd(kNaN);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vv = _mm256_loadu_pd(v + i);
    const __m256d uu = _mm256_loadu_pd(u + i);
    const __m256d a = _mm256_sub_pd(one, vv);
    const __m256d b = _mm256_add_pd(one, uu);
    const __m256d bad = _mm256_or_pd(near_zero(a), near_zero(b));
    const __m256d rv = _mm256_div_pd(_mm256_add_pd(one, vv), a);
    const __m256d ru = _mm256_xor_pd(_mm256_div_pd(_mm256_sub_pd(one, uu), b), _mm256_set1_pd(-0.0));
    _mm256_storeu_pd(vt + i, _mm256_blendv_pd(rv, nan, bad));
    _mm256_storeu_pd(ut + i, _mm256_blendv_pd(ru, nan, bad));
  }
  for (; i < n; ++i) lc(v[i], u[i], vt[i], ut[i]);
}

inline __m256d scaled_root(__m256d a, __m256d b) {
  const __m256d gt = _mm256_cmp_pd(a, b, _CMP_GT_OQ);
  const __m256d m = _mm256_blendv_pd(b, a, gt);
  const __m256d s = _mm256_blendv_pd(a, b, gt);
  const __m256d pos = _mm256_cmp_pd(m, _mm256_setzero_pd(), _CMP_GT_OQ);
  const __m256d q = _mm256_div_pd(s, m);
  const __m256d r = _mm256_mul_pd(m, _mm256_sqrt_pd(_mm256_add_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(q, q))));
  return _mm256_and_pd(r, pos);
}

// Walks n = lo.. in groups of four lanes carrying x^{n-1}. The power is
// re-seeded from std::pow every kAnchorStride elements so rounding drift
// stays bounded no matter how long the range is.
struct BlockStream {
  const SpectralConstants& k;
  __m256d x, x4, inv_c2, sqrt_inv_c2, xx, two;
  __m256d p, n;
  std::size_t next;
  std::size_t since_anchor = 0;

  BlockStream(const SpectralConstants& kk, std::size_t start)
      : k(kk),
        x(_mm256_set1_pd(kk.x)),
        x4(_mm256_set1_pd(kk.x * kk.x * kk.x * kk.x)),
        inv_c2(_mm256_set1_pd(kk.inv_c2)),
        sqrt_inv_c2(_mm256_set1_pd(std::sqrt(kk.inv_c2))),
        xx(_mm256_set1_pd(kk.x * kk.x)),
        two(_mm256_set1_pd(2.0)),
        next(start) {
    anchor();
  }

  void anchor() {
    const double b = static_cast<double>(next);
    p = _mm256_setr_pd(std::pow(k.x, b - 1.0), std::pow(k.x, b), std::pow(k.x, b + 1.0), std::pow(k.x, b + 2.0));
    n = _mm256_setr_pd(b, b + 1.0, b + 2.0, b + 3.0);
    since_anchor = 0;
  }

  // Fills a, b, root for the current group and advances.
  void step(__m256d& a, __m256d& b, __m256d& root) {
    if (since_anchor >= kAnchorStride) anchor();
    a = _mm256_mul_pd(p, _mm256_add_pd(_mm256_mul_pd(n, inv_c2), xx));
    b = _mm256_mul_pd(_mm256_mul_pd(two, _mm256_mul_pd(p, x)), sqrt_inv_c2);
    root = scaled_root(a, b);
    p = _mm256_mul_pd(p, x4);
    n = _mm256_add_pd(n, _mm256_set1_pd(4.0));
    next += 4;
    since_anchor += 4;
  }
};

inline __m256d abs_minus(__m256d scale, __m256d a, __m256d b, __m256d root) {
  const __m256d den = _mm256_add_pd(root, a);
  const __m256d ok = _mm256_cmp_pd(den, _mm256_setzero_pd(), _CMP_GT_OQ);
  const __m256d v = _mm256_mul_pd(scale, _mm256_mul_pd(b, _mm256_div_pd(b, den)));
  return _mm256_and_pd(v, ok);
}

inline double hsum(__m256d v) {
  alignas(32) double buf[4];
  _mm256_store_pd(buf, v);
  return (buf[0] + buf[1]) + (buf[2] + buf[3]);
}

Block scalar_block(const SpectralConstants& k, std::size_t n) {
  if (n == 0) return block_zero(k);
  return block_from_power(k, std::pow(k.x, static_cast<double>(n - 1)), static_cast<double>(n));
}

void ppt_pairs(const SpectralConstants& k, std::size_t lo, std::size_t hi, double* plus, double* minus) {
  std::size_t n = lo;
  if (n == 0 && n < hi) {
    const Block q = block_zero(k);
    plus[0] = lambda_plus(k, q);
    minus[0] = -abs_lambda_minus(k, q);
    n = 1;
  }
  const __m256d quarter = _mm256_set1_pd(0.25 * k.inv_c2);
  const __m256d neg = _mm256_set1_pd(-0.0);
  if (n + 4 <= hi) {
    BlockStream s(k, n);
    for (; n + 4 <= hi; n += 4) {
      __m256d a, b, root;
      s.step(a, b, root);
      _mm256_storeu_pd(plus + (n - lo), _mm256_mul_pd(quarter, _mm256_add_pd(a, root)));
      _mm256_storeu_pd(minus + (n - lo), _mm256_xor_pd(abs_minus(quarter, a, b, root), neg));
    }
  }
  for (; n < hi; ++n) {
    const Block q = scalar_block(k, n);
    plus[n - lo] = lambda_plus(k, q);
    minus[n - lo] = -abs_lambda_minus(k, q);
  }
}

double sum_abs_lambda_minus(const SpectralConstants& k, std::size_t lo, std::size_t hi) {
  std::size_t n = lo;
  double s = 0.0;
  if (n == 0 && n < hi) {
    s += abs_lambda_minus(k, block_zero(k));
    n = 1;
  }
  const __m256d quarter = _mm256_set1_pd(0.25 * k.inv_c2);
  __m256d acc = _mm256_setzero_pd();
  if (n + 4 <= hi) {
    BlockStream st(k, n);
    for (; n + 4 <= hi; n += 4) {
      __m256d a, b, root;
      st.step(a, b, root);
      acc = _mm256_add_pd(acc, abs_minus(quarter, a, b, root));
    }
  }
  s += hsum(acc);
  for (; n < hi; ++n) s += abs_lambda_minus(k, scalar_block(k, n));
  return s;
}

double sigma_series(const SpectralConstants& k, std::size_t lo, std::size_t hi) {
  std::size_t n = lo;
  double s = 0.0;
  if (n == 0 && n < hi) {
    s += sigma_term(k, block_zero(k));
    n = 1;
  }
  const __m256d half = _mm256_set1_pd(0.5 * k.inv_c2);
  __m256d acc = _mm256_setzero_pd();
  if (n + 4 <= hi) {
    BlockStream st(k, n);
    for (; n + 4 <= hi; n += 4) {
      __m256d a, b, root;
      st.step(a, b, root);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(half, root));
    }
  }
  s += hsum(acc);
  for (; n < hi; ++n) s += sigma_term(k, scalar_block(k, n));
  return s;
}

}  // namespace

const KernelTable kTable{
    Isa::Avx2, rindler_to_diamond, diamond_to_rindler, lightcone_map, ppt_pairs, sum_abs_lambda_minus, sigma_series,
};

}  // namespace diamond::kernels::avx2
