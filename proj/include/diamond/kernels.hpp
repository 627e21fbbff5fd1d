#pragma once

// Data-parallel inner loops with a scalar reference implementation and SIMD
// variants picked at runtime. Every variant computes the same quantities
// from the same formulas; the equivalence tests hold them to a few ulps.
//
// All inputs are dimensionless: geometry kernels take coordinates in units
// of alpha (diamond side) or alpha~ (Rindler side), spectral kernels take
// x = tanh^2 r and inv_c2 = 1/cosh^2 r.

#include <cstddef>
#include <string_view>

namespace diamond::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Constants shared by the partial-transpose spectrum kernels.
struct SpectralConstants {
  double x = 0.0;       // tanh^2 r
  double inv_c2 = 1.0;  // 1 / cosh^2 r

  static SpectralConstants from_r(double r);
};

struct KernelTable {
  Isa isa;

  // (t~, x~)/alpha~ -> (t, x)/alpha. NaN where the image is at infinity.
  void (*rindler_to_diamond)(const double* t_tilde, const double* x_tilde, double* t, double* x,
                             std::size_t n);
  // (t, x)/alpha -> (t~, x~)/alpha~. NaN on the singular set.
  void (*diamond_to_rindler)(const double* t, const double* x, double* t_tilde, double* x_tilde,
                             std::size_t n);
  // (V, U)/alpha -> (V~, U~)/alpha~.
  void (*lightcone_map)(const double* v, const double* u, double* v_tilde, double* u_tilde,
                        std::size_t n);

  // lambda_+^(n), lambda_-^(n) for n in [n_begin, n_end).
  void (*ppt_pairs)(const SpectralConstants& k, std::size_t n_begin, std::size_t n_end, double* plus,
                    double* minus);
  // sum over n in [n_begin, n_end) of |lambda_-^(n)|.
  double (*sum_abs_lambda_minus)(const SpectralConstants& k, std::size_t n_begin, std::size_t n_end);
  // sum over n in [n_begin, n_end) of tanh^{2n} r / (2 cosh^2 r) * sqrt(Z_n).
  double (*sigma_series)(const SpectralConstants& k, std::size_t n_begin, std::size_t n_end);
};

/// True when the variant was compiled in and the CPU supports it.
bool available(Isa isa) noexcept;

/// Table for a specific variant. Falls back to scalar if unavailable.
const KernelTable& table(Isa isa) noexcept;

/// The table chosen at first use: the best available variant, unless the
/// environment variable DIAMOND_SIMD is set to "scalar" or "avx2".
const KernelTable& active() noexcept;

namespace scalar {
extern const KernelTable kTable;
}
#if defined(DIAMOND_BUILD_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif

}  // namespace diamond::kernels
