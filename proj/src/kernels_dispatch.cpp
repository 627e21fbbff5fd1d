#include <cmath>
#include <cstdlib>
#include <string_view>

#include "diamond/kernels.hpp"

namespace diamond::kernels {

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "?";
}

SpectralConstants SpectralConstants::from_r(double r) {
  const double t = std::tanh(r);
  const double c = std::cosh(r);
  return {t * t, 1.0 / (c * c)};
}

bool available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(DIAMOND_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) noexcept {
#if defined(DIAMOND_BUILD_AVX2)
  if (isa == Isa::Avx2 && available(Isa::Avx2)) return avx2::kTable;
#endif
  (void)isa;
  return scalar::kTable;
}

namespace {

const KernelTable& choose() noexcept {
  const char* env = std::getenv("DIAMOND_SIMD");
  const std::string_view want = env ? env : "auto";
  if (want == "scalar") return table(Isa::Scalar);
  return table(Isa::Avx2);
}

}  // namespace

const KernelTable& active() noexcept {
  static const KernelTable& t = choose();
  return t;
}

}  // namespace diamond::kernels
