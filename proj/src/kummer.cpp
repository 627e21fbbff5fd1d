#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <optional>

#include "detail.hpp"
#include "diamond/errors.hpp"
#include "diamond/specfun.hpp"

namespace diamond::specfun {

namespace {

namespace mp = boost::multiprecision;

template <unsigned Digits>
using Float = mp::number<mp::cpp_bin_float<Digits>, mp::et_off>;

template <class T>
struct Cx {
  T re, im;
};

template <class T>
Cx<T> mul(const Cx<T>& x, const Cx<T>& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

template <class T>
T norm1(const Cx<T>& x) {
  using std::abs;
  return abs(x.re) + abs(x.im);
}

struct SeriesOutcome {
  cplx value;
  double max_term = 0.0;  // in |re| + |im|
  double magnitude = 0.0;
  std::size_t terms = 0;
  bool converged = false;
};

// Plain recurrence t_{k+1} = t_k (a+k) z / ((b+k)(k+1)). Cancellation is
// handled by the caller choosing T, not inside the loop.
template <class T>
SeriesOutcome run_series(const KummerParams& p, std::size_t max_terms, const T& stop_rel) {
  const Cx<T> a{T(p.a.real()), T(p.a.imag())};
  const Cx<T> b{T(p.b.real()), T(p.b.imag())};
  const Cx<T> z{T(p.z.real()), T(p.z.imag())};
  const double past_peak = std::abs(p.a) + std::abs(p.z) + 2.0;

  Cx<T> term{T(1), T(0)};
  Cx<T> sum{T(1), T(0)};
  T max_term = T(1);
  SeriesOutcome out;
  int quiet = 0;
  std::size_t k = 0;
  for (; k < max_terms; ++k) {
    const T kk(static_cast<double>(k));
    const Cx<T> num = mul(Cx<T>{a.re + kk, a.im}, z);
    const Cx<T> den{(b.re + kk) * (kk + 1), b.im * (kk + 1)};
    const T dd = den.re * den.re + den.im * den.im;
    const Cx<T> ratio{(num.re * den.re + num.im * den.im) / dd, (num.im * den.re - num.re * den.im) / dd};
    term = mul(term, ratio);
    sum.re += term.re;
    sum.im += term.im;
    const T tn = norm1(term);
    if (tn > max_term) max_term = tn;
    if (tn == 0) {
      out.converged = true;
      ++k;
      break;
    }
    if (static_cast<double>(k) > past_peak && tn <= stop_rel * norm1(sum)) {
      if (++quiet >= 2) {
        out.converged = true;
        ++k;
        break;
      }
    } else {
      quiet = 0;
    }
  }
  out.value = cplx(static_cast<double>(sum.re), static_cast<double>(sum.im));
  out.max_term = static_cast<double>(max_term);
  out.magnitude = static_cast<double>(norm1(sum));
  out.terms = k + 1;
  return out;
}

// Decimal digits lost to cancellation plus the per-term rounding growth.
double digits_needed(const SeriesOutcome& s) {
  const double cond = s.magnitude > 0.0 ? s.max_term / s.magnitude : std::numeric_limits<double>::infinity();
  return std::log10(std::max(cond, 1.0)) + std::log10(static_cast<double>(s.terms)) + 1.0;
}

template <unsigned Digits>
std::optional<KummerEval> try_tier(const KummerParams& p, const KummerConfig& cfg) {
  const Float<Digits> stop = mp::pow(Float<Digits>(10), -static_cast<int>(Digits) + 5);
  const SeriesOutcome s = run_series<Float<Digits>>(p, cfg.max_terms, stop);
  if (!s.converged)
    throw NonConvergence("Kummer series exhausted its term budget", s.value, std::abs(s.value) * 1e-10);
  // 11 digits must survive (1e-10 target with a digit of margin).
  if (digits_needed(s) + 11.0 > static_cast<double>(Digits)) return std::nullopt;
  return KummerEval{s.value, s.terms, static_cast<int>(Digits), s.max_term / s.magnitude};
}

}  // namespace

KummerEval kummer_m_eval(const KummerParams& p, const KummerConfig& cfg) {
  if (p.z == cplx(0.0, 0.0)) return {cplx(1.0, 0.0), 1, 16, 1.0};
  if (!(std::abs(p.z) <= cfg.z_cap))
    throw DomainCap("|z| = " + detail::num(std::abs(p.z)) + " exceeds the validated cap " + detail::num(cfg.z_cap));
  if (p.b.imag() == 0.0 && p.b.real() <= 0.0 && p.b.real() == std::floor(p.b.real()))
    throw InvalidArgument("M(a, b, z) undefined for nonpositive integer b");

  const SeriesOutcome probe = run_series<double>(p, cfg.max_terms, 1e-17);
  if (!probe.converged)
    throw NonConvergence("Kummer series exhausted its term budget", probe.value, std::abs(probe.value));
  if (digits_needed(probe) + 11.0 <= 15.5) return {probe.value, probe.terms, 16, probe.max_term / probe.magnitude};

  // The double probe's magnitude is itself unreliable under heavy
  // cancellation, so every tier re-checks its own conditioning.
  if (auto r = try_tier<50>(p, cfg)) return *r;
  if (auto r = try_tier<100>(p, cfg)) return *r;
  if (auto r = try_tier<160>(p, cfg)) return *r;
  if (auto r = try_tier<250>(p, cfg)) return *r;
  throw NonConvergence("Kummer series too ill-conditioned for the available precision tiers", probe.value,
                       std::abs(probe.value));
}

}  // namespace diamond::specfun
