#include "diamond/modes.hpp"

#include <cmath>
#include <numbers>

#include "detail.hpp"
#include "diamond/debug.hpp"
#include "diamond/errors.hpp"
#include "diamond/specfun.hpp"

namespace diamond::modes {

namespace {

using geometry::DiamondChart;
using geometry::EventCoords;
using geometry::Frame;
using std::numbers::pi;

constexpr cplx kI{0.0, 1.0};

// Contour split for the exterior integrals: |U| in (1, kSplit) is mapped by
// U = +-coth s, |U| > kSplit is rotated off the real axis.
constexpr double kSplit = 2.0;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive, got " + detail::num(v));
}

double norm_factor(double freq) { return 1.0 / std::sqrt(4.0 * pi * freq); }

// g_int phase: ((1+U)/(1-U))^{-i w/2} = exp(-i w atanh U), |U| < 1.
cplx g_int_hat(double w, double u) { return std::exp(-kI * (w * std::atanh(u))); }

// g_ext phase: ((U+1)/(U-1))^{i w/2} = exp(i w acoth U), |U| > 1.
cplx g_ext_hat(double w, double u) {
  const double acoth = std::copysign(0.5 * std::log1p(2.0 / (std::fabs(u) - 1.0)), u);
  return std::exp(kI * (w * acoth));
}

double null_coordinate(const ModeSpec& m, const EventCoords& p) {
  EventCoords q = p;
  if (p.frame == Frame::MinkowskiRindler) q = geometry::rindler_to_diamond(m.chart, p);
  if (p.frame == Frame::DiamondCoords) q = geometry::diamond_coords_to_minkowski(m.chart, p);
  return m.sigma == Sigma::Plus ? q.advanced() : q.retarded();
}

specfun::cplx integrate(const specfun::Integrand& f, double lo, double hi, double hint, double rel_tol) {
  specfun::QuadratureSpec spec;
  spec.lo = lo;
  spec.hi = hi;
  spec.rel_tol = rel_tol;
  spec.oscillation_hint = hint;
  spec.max_subdivisions = 50000;
  return specfun::integrate(f, spec).value;
}

// Integral over |U| < 1 in s = atanh U:
//   int sech^2 s e^{-i w s} e^{i kappa tanh s} ds.
cplx interior_integral(double w, double kappa, double rel_tol) {
  auto f = [w, kappa](double s) {
    const double c = std::cosh(s);
    return std::exp(kI * (kappa * std::tanh(s) - w * s)) / (c * c);
  };
  double s_max = 10.0;
  for (int pass = 0; pass < 6; ++pass) {
    const cplx v = integrate(f, -s_max, s_max, w + std::fabs(kappa), rel_tol);
    // exact mass of sech^2 outside [-S, S]
    const double envelope = 4.0 / (std::exp(2.0 * s_max) + 1.0);
    if (envelope <= 0.1 * rel_tol * std::abs(v)) return v;
    const double need = 0.5 * std::log(40.0 / (rel_tol * std::max(std::abs(v), 1e-300)));
    if (need > 60.0) throw NonConvergence("interior Bogoliubov integral below quadrature resolution", v, std::abs(v));
    s_max = std::max(s_max + 1.0, need + 0.5);
  }
  throw NonConvergence("interior Bogoliubov truncation did not settle", cplx{}, 0.0);
}

// Integral over |U| > 1. Near pieces in s with U = +-coth s for
// 1 < |U| < kSplit; the remaining half-lines are rotated into the half-plane
// where e^{i kappa U} decays, using the principal branch, which is analytic
// there because (U+1)/(U-1) stays off the negative axis.
cplx exterior_integral(double w, double kappa, double rel_tol) {
  const double s0 = std::atanh(1.0 / kSplit);
  const double sgn = kappa > 0.0 ? 1.0 : -1.0;
  const double k = std::fabs(kappa);

  auto near_right = [w, kappa](double s) {
    const double sh = std::sinh(s);
    return std::exp(kI * (w * s + kappa / std::tanh(s))) / (sh * sh);
  };
  auto near_left = [w, kappa](double s) {
    const double sh = std::sinh(s);
    return std::exp(kI * (-w * s - kappa / std::tanh(s))) / (sh * sh);
  };
  auto power = [w](cplx u) { return std::exp(kI * (0.5 * w) * std::log((u + 1.0) / (u - 1.0))); };
  auto tail = [&, sgn](double t, double u0) {
    const cplx u = cplx(u0, sgn * t);
    return power(u) * std::exp(kI * (kappa * u)) * (kI * sgn);
  };

  // Rough magnitude for the truncation rules; refined once below.
  double scale = 1.0;
  cplx total;
  for (int pass = 0; pass < 2; ++pass) {
    const double tol_abs = 0.1 * rel_tol * scale;
    const double s_max = std::max(s0 + 10.0, 0.5 * std::log(2.0 / tol_abs + 1.0) + 0.5);
    // |power| <= exp(w * arg / 2) with arg bounded by ~0.52 on these rays.
    const double t_max = std::max(1.0, (std::log(std::exp(0.3 * w) / (k * tol_abs)) + 1.0) / k);
    const double hint_near = w + k * (kSplit * kSplit - 1.0);
    const cplx nr = integrate(near_right, s0, s_max, hint_near, rel_tol);
    const cplx nl = integrate(near_left, s0, s_max, hint_near, rel_tol);
    const cplx tr = integrate([&](double t) { return tail(t, kSplit); }, 0.0, t_max, 0.0, rel_tol);
    const cplx tl = -integrate([&](double t) { return tail(t, -kSplit); }, 0.0, t_max, 0.0, rel_tol);
    total = nr + nl + tr + tl;
    if (std::abs(total) >= scale) break;
    scale = std::max(std::abs(total), 1e-300);
  }
  return total;
}

}  // namespace

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::MinkowskiF: return "minkowski-f";
    case Family::DiamondG_int: return "g-int";
    case Family::DiamondG_ext: return "g-ext";
    case Family::UnruhH_int: return "h-int";
    case Family::UnruhH_ext: return "h-ext";
  }
  return "?";
}

std::string_view to_string(Support s) noexcept { return s == Support::Int ? "int" : "ext"; }

std::string_view to_string(CoefKind k) noexcept { return k == CoefKind::Alpha ? "alpha" : "beta"; }

SqueezingParameter SqueezingParameter::from_r(double r) {
  if (!(r >= 0.0) || std::isnan(r)) throw InvalidArgument("squeezing parameter must be >= 0, got " + detail::num(r));
  return {r, std::nullopt};
}

SqueezingParameter squeezing_from_frequency(double omega_hat) {
  require_positive(omega_hat, "omega_hat");
  const double r = std::atanh(std::exp(-0.5 * pi * omega_hat)) * debug::factor(debug::Fault::Squeezing);
  return {r, omega_hat};
}

SqueezingParameter squeezing_from_frequency(const DiamondChart& chart, double omega) {
  require_positive(omega, "omega");
  return squeezing_from_frequency(omega * chart.alpha());
}

double thermal_occupation(const SqueezingParameter& s) {
  const double sh = std::sinh(s.r);
  return sh * sh;
}

double thermal_occupation(const DiamondChart& chart, double omega) {
  return thermal_occupation(squeezing_from_frequency(chart, omega));
}

cplx eval_mode_at(const ModeSpec& m, double null_coord, const EvalOptions& opt) {
  require_positive(m.freq_hat, "mode frequency");
  const double w = m.freq_hat;
  const double u = null_coord / m.chart.alpha();
  const double norm = norm_factor(m.freq());
  const bool inside = std::fabs(u) < 1.0;
  const bool outside = std::fabs(u) > 1.0;

  auto out_of_support = [&](const char* which) -> cplx {
    if (opt.strict)
      throw OutOfSupport(std::string(which) + " evaluated at U/alpha = " + detail::num(u) + " outside its support");
    return {0.0, 0.0};
  };

  switch (m.family) {
    case Family::MinkowskiF:
      return norm * std::exp(-kI * (w * u));
    case Family::DiamondG_int:
      return inside ? norm * g_int_hat(w, u) : out_of_support("g-int");
    case Family::DiamondG_ext:
      return outside ? norm * g_ext_hat(w, u) : out_of_support("g-ext");
    case Family::UnruhH_int:
    case Family::UnruhH_ext: {
      if (!inside && !outside) return out_of_support(m.family == Family::UnruhH_int ? "h-int" : "h-ext");
      const double r = squeezing_from_frequency(w).r;
      const double ch = std::cosh(r);
      const double sh = std::sinh(r);
      const bool own = (m.family == Family::UnruhH_int) == inside;
      // Own region carries cosh r g, the partner region sinh r g*.
      const cplx g = inside ? g_int_hat(w, u) : g_ext_hat(w, u);
      return own ? norm * ch * g : norm * sh * std::conj(g);
    }
  }
  return {0.0, 0.0};
}

cplx eval_mode(const ModeSpec& m, const EventCoords& p, const EvalOptions& opt) {
  return eval_mode_at(m, null_coordinate(m, p), opt);
}

cplx bogoliubov_closed_form(const DiamondChart& chart, double omega_hat, double k_hat, CoefKind kind, Sigma) {
  require_positive(omega_hat, "omega_hat");
  require_positive(k_hat, "k_hat");
  const double kk = kind == CoefKind::Alpha ? k_hat : -k_hat;
  const specfun::KummerParams p{cplx(1.0, -0.5 * omega_hat), cplx(2.0, 0.0), cplx(0.0, 2.0 * kk)};
  const cplx m = specfun::kummer_m(p);
  const double pref = 0.5 * chart.alpha() * std::sqrt(omega_hat * k_hat) / std::sinh(0.5 * pi * omega_hat);
  return pref * std::exp(-kI * kk) * m * debug::factor(debug::Fault::BogoliubovClosedForm);
}

cplx bogoliubov_quadrature(const DiamondChart& chart, double omega_hat, double k_hat, CoefKind kind, Support region,
                           Sigma, const BogoliubovQuadratureOptions& opt) {
  require_positive(omega_hat, "omega_hat");
  require_positive(k_hat, "k_hat");
  require_positive(opt.rel_tol, "rel_tol");
  const double kappa = kind == CoefKind::Alpha ? k_hat : -k_hat;
  const double pref = chart.alpha() / (2.0 * pi) * std::sqrt(k_hat / omega_hat);
  const cplx integral = region == Support::Int ? interior_integral(omega_hat, kappa, opt.rel_tol)
                                               : exterior_integral(omega_hat, kappa, opt.rel_tol);
  return pref * integral;
}

BogoliubovPair bogoliubov_pair_closed_form(const DiamondChart& chart, double omega_hat, double k_hat) {
  return {bogoliubov_closed_form(chart, omega_hat, k_hat, CoefKind::Alpha),
          bogoliubov_closed_form(chart, omega_hat, k_hat, CoefKind::Beta), omega_hat, k_hat, Support::Int};
}

BogoliubovPair bogoliubov_pair_quadrature(const DiamondChart& chart, double omega_hat, double k_hat, Support region,
                                          const BogoliubovQuadratureOptions& opt) {
  return {bogoliubov_quadrature(chart, omega_hat, k_hat, CoefKind::Alpha, region, Sigma::Plus, opt),
          bogoliubov_quadrature(chart, omega_hat, k_hat, CoefKind::Beta, region, Sigma::Plus, opt), omega_hat, k_hat,
          region};
}

}  // namespace diamond::modes
