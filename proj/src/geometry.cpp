#include "diamond/geometry.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "detail.hpp"
#include "diamond/debug.hpp"
#include "diamond/errors.hpp"
#include "diamond/kernels.hpp"

namespace diamond::geometry {

namespace {

using detail::num;

int epsilon_of(Region r) {
  switch (r) {
    case Region::D:
    case Region::DBarBar_FutureImage:
      return +1;
    case Region::DBar:
    case Region::DBarBar_PastImage:
      return -1;
    case Region::Boundary:
      break;
  }
  throw InvalidArgument("no diamond patch on the boundary");
}

bool swaps_time_and_space(Region r) {
  return r == Region::DBarBar_FutureImage || r == Region::DBarBar_PastImage;
}

// Hatted light-cone coordinates of a diamond-frame point.
struct Hat {
  double v, u;
};

Hat diamond_hat(const DiamondChart& chart, const EventCoords& p) {
  return {(p.c1 + p.c2) / chart.alpha(), (p.c1 - p.c2) / chart.alpha()};
}

EventCoords to_minkowski_diamond(const DiamondChart& chart, const EventCoords& p) {
  switch (p.frame) {
    case Frame::MinkowskiDiamond:
      return p;
    case Frame::MinkowskiRindler:
      return rindler_to_diamond(chart, p);
    case Frame::DiamondCoords:
      return diamond_coords_to_minkowski(chart, p);
  }
  return p;
}

}  // namespace

DiamondChart DiamondChart::make(double alpha, double lambda) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidArgument("chart needs alpha > 0, got " + num(alpha));
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw InvalidArgument("chart needs lambda > 0, got " + num(lambda));
  return DiamondChart(alpha, lambda);
}

DiamondChart::DiamondChart(double alpha, double lambda)
    : alpha_(alpha),
      lambda_(lambda),
      alpha_tilde_(2.0 * alpha / lambda),
      kappa_(4.0 / lambda),
      accel_(2.0 / alpha),
      temperature_(2.0 / (std::numbers::pi * 2.0 * alpha)) {}

std::string_view to_string(Frame f) noexcept {
  switch (f) {
    case Frame::MinkowskiDiamond: return "minkowski-diamond";
    case Frame::MinkowskiRindler: return "minkowski-rindler";
    case Frame::DiamondCoords: return "eta-xi";
  }
  return "?";
}

std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::D: return "D";
    case Region::DBar: return "DBar";
    case Region::DBarBar_FutureImage: return "DBarBar_FutureImage";
    case Region::DBarBar_PastImage: return "DBarBar_PastImage";
    case Region::Boundary: return "Boundary";
  }
  return "?";
}

std::string_view to_string(Wedge w) noexcept {
  switch (w) {
    case Wedge::R: return "R";
    case Wedge::L: return "L";
    case Wedge::F: return "F";
    case Wedge::P: return "P";
  }
  return "?";
}

EventCoords EventCoords::minkowski_diamond(double t, double x) {
  return {Frame::MinkowskiDiamond, t, x, Region::D, +1};
}

EventCoords EventCoords::minkowski_rindler(double t_tilde, double x_tilde) {
  return {Frame::MinkowskiRindler, t_tilde, x_tilde, Region::D, +1};
}

EventCoords EventCoords::diamond(double eta, double xi, Region region) {
  return {Frame::DiamondCoords, eta, xi, region, epsilon_of(region)};
}

double EventCoords::advanced() const noexcept {
  if (frame == Frame::DiamondCoords) return epsilon * (c1 + c2);
  return c1 + c2;
}

double EventCoords::retarded() const noexcept {
  if (frame == Frame::DiamondCoords) return epsilon * (c1 - c2);
  return c1 - c2;
}

EventCoords rindler_to_diamond(const DiamondChart& chart, const EventCoords& p) {
  if (p.frame != Frame::MinkowskiRindler) throw InvalidArgument("rindler_to_diamond expects a Rindler-frame point");
  const double th = p.c1 / chart.alpha_tilde();
  const double xh = p.c2 / chart.alpha_tilde();
  const double vt = th + xh;
  const double ut = th - xh;
  // F+ = (x^+1)^2 - t^^2 and N = 1 - x^^2 + t^^2 in factored form.
  const double fa = 1.0 + vt;
  const double fb = 1.0 - ut;
  if (std::fabs(fa) < kSingularTolerance || std::fabs(fb) < kSingularTolerance)
    throw SingularPoint("Rindler point (" + num(p.c1) + ", " + num(p.c2) + ") maps to infinity");
  const double fplus = fa * fb;
  const double n = 1.0 + vt * ut;
  return EventCoords::minkowski_diamond(chart.alpha() * 2.0 * th / fplus, -chart.alpha() * n / fplus);
}

EventCoords diamond_to_rindler(const DiamondChart& chart, const EventCoords& p) {
  if (p.frame != Frame::MinkowskiDiamond) throw InvalidArgument("diamond_to_rindler expects a diamond-frame point");
  const double th = p.c1 / chart.alpha();
  const double xh = p.c2 / chart.alpha();
  const double v = th + xh;
  const double u = th - xh;
  const double fa = 1.0 + u;
  const double fb = 1.0 - v;
  if (std::fabs(fa) < kSingularTolerance || std::fabs(fb) < kSingularTolerance)
    throw SingularPoint("diamond point (" + num(p.c1) + ", " + num(p.c2) + ") maps to Rindler infinity");
  const double fminus = fa * fb;
  const double n = 1.0 + v * u;
  const double g = debug::factor(debug::Fault::GeometryInverse);
  return EventCoords::minkowski_rindler(g * chart.alpha_tilde() * 2.0 * th / fminus, chart.alpha_tilde() * n / fminus);
}

std::pair<double, double> lightcone_map(const DiamondChart& chart, double v, double u) {
  const double vh = v / chart.alpha();
  const double uh = u / chart.alpha();
  if (std::fabs(1.0 - vh) < kSingularTolerance || std::fabs(1.0 + uh) < kSingularTolerance)
    throw SingularPoint("light-cone point (" + num(v) + ", " + num(u) + ") maps to infinity");
  return {chart.alpha_tilde() * (1.0 + vh) / (1.0 - vh), -chart.alpha_tilde() * (1.0 - uh) / (1.0 + uh)};
}

std::pair<double, double> lightcone_unmap(const DiamondChart& chart, double v_tilde, double u_tilde) {
  const double vt = v_tilde / chart.alpha_tilde();
  const double ut = u_tilde / chart.alpha_tilde();
  if (std::fabs(1.0 + vt) < kSingularTolerance || std::fabs(1.0 - ut) < kSingularTolerance)
    throw SingularPoint("Rindler light-cone point (" + num(v_tilde) + ", " + num(u_tilde) + ") maps to infinity");
  return {chart.alpha() * (vt - 1.0) / (vt + 1.0), chart.alpha() * (1.0 + ut) / (1.0 - ut)};
}

std::pair<double, double> rindler_chart(const DiamondChart& chart, double eta, double xi, Region region) {
  const double eps = epsilon_of(region);
  const double scale = eps * chart.alpha_tilde() * std::exp(chart.accel() * xi);
  const double ch = std::cosh(chart.accel() * eta);
  const double sh = std::sinh(chart.accel() * eta);
  if (swaps_time_and_space(region)) return {scale * ch, scale * sh};
  return {scale * sh, scale * ch};
}

Classification classify_region(const DiamondChart& chart, const EventCoords& p) {
  Hat h{};
  if (p.frame == Frame::MinkowskiRindler) {
    auto [v, u] = lightcone_unmap(chart, p.c1 + p.c2, p.c1 - p.c2);
    h = {v / chart.alpha(), u / chart.alpha()};
  } else {
    h = diamond_hat(chart, to_minkowski_diamond(chart, p));
  }
  const double av = std::fabs(h.v);
  const double au = std::fabs(h.u);
  if (std::fabs(av - 1.0) < kSingularTolerance || std::fabs(au - 1.0) < kSingularTolerance) return {};

  // sign V~ = sign((1+V)(1-V)), sign U~ = -sign((1-U)(1+U))
  const bool vt_pos = av < 1.0;
  const bool ut_pos = au > 1.0;
  Classification c;
  if (vt_pos && !ut_pos) {
    c.region = Region::D;
    c.wedge = Wedge::R;
  } else if (!vt_pos && ut_pos) {
    c.region = Region::DBar;
    c.wedge = Wedge::L;
  } else if (vt_pos && ut_pos) {
    c.region = Region::DBarBar_FutureImage;
    c.wedge = Wedge::F;
  } else {
    c.region = Region::DBarBar_PastImage;
    c.wedge = Wedge::P;
  }
  return c;
}

EventCoords diamond_coords(const DiamondChart& chart, const EventCoords& p) {
  if (p.frame != Frame::MinkowskiDiamond) throw InvalidArgument("diamond_coords expects a diamond-frame point");
  const Hat h = diamond_hat(chart, p);
  if (std::fabs(std::fabs(h.v) - 1.0) < kSingularTolerance || std::fabs(std::fabs(h.u) - 1.0) < kSingularTolerance)
    throw OnHorizon("point (" + num(p.c1) + ", " + num(p.c2) + ") lies on a horizon line");

  const Region region = classify_region(chart, p).region;
  const int eps = epsilon_of(region);
  const EventCoords img = diamond_to_rindler(chart, p);
  const double vt = (img.c1 + img.c2) / chart.alpha_tilde();
  const double ut = (img.c1 - img.c2) / chart.alpha_tilde();

  // V~/alpha~ = eps e^{a(xi+eta)}; U~/alpha~ = -eps e^{a(xi-eta)} on R/L and
  // +eps e^{a(xi-eta)} on the reversed F/P patches.
  const double u_sign = swaps_time_and_space(region) ? eps : -eps;
  const double half = 0.5 * chart.alpha();
  const double sum = half * std::log(eps * vt);
  const double diff = half * std::log(u_sign * ut);
  EventCoords out = EventCoords::diamond(0.5 * (sum - diff), 0.5 * (sum + diff), region);
  return out;
}

EventCoords diamond_coords_to_minkowski(const DiamondChart& chart, const EventCoords& p) {
  if (p.frame != Frame::DiamondCoords) throw InvalidArgument("expected an (eta, xi) point");
  auto [tt, xt] = rindler_chart(chart, p.c1, p.c2, p.region);
  return rindler_to_diamond(chart, EventCoords::minkowski_rindler(tt, xt));
}

double conformal_factor(const DiamondChart& chart, const EventCoords& p) {
  if (p.frame == Frame::MinkowskiRindler) {
    const double vt = (p.c1 + p.c2) / chart.alpha_tilde();
    const double ut = (p.c1 - p.c2) / chart.alpha_tilde();
    const double fa = 1.0 + vt;
    const double fb = 1.0 - ut;
    if (std::fabs(fa) < kSingularTolerance || std::fabs(fb) < kSingularTolerance)
      throw SingularPoint("conformal factor vanishes at (" + num(p.c1) + ", " + num(p.c2) + ")");
    return fa * fb;
  }
  const Hat h = diamond_hat(chart, to_minkowski_diamond(chart, p));
  const double fa = 1.0 + h.u;
  const double fb = 1.0 - h.v;
  if (std::fabs(fa) < kSingularTolerance || std::fabs(fb) < kSingularTolerance)
    throw SingularPoint("conformal factor diverges at (" + num(p.c1) + ", " + num(p.c2) + ")");
  return 4.0 / (fa * fb);
}

void rindler_to_diamond(const DiamondChart& chart, std::span<const double> t_tilde,
                        std::span<const double> x_tilde, std::span<double> t, std::span<double> x) {
  const std::size_t n = t_tilde.size();
  if (x_tilde.size() != n || t.size() != n || x.size() != n)
    throw InvalidArgument("batch spans must have equal length");
  std::vector<double> th(n), xh(n);
  const double inv = 1.0 / chart.alpha_tilde();
  for (std::size_t i = 0; i < n; ++i) {
    th[i] = t_tilde[i] * inv;
    xh[i] = x_tilde[i] * inv;
  }
  kernels::active().rindler_to_diamond(th.data(), xh.data(), t.data(), x.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] *= chart.alpha();
    x[i] *= chart.alpha();
  }
}

void diamond_to_rindler(const DiamondChart& chart, std::span<const double> t, std::span<const double> x,
                        std::span<double> t_tilde, std::span<double> x_tilde) {
  const std::size_t n = t.size();
  if (x.size() != n || t_tilde.size() != n || x_tilde.size() != n)
    throw InvalidArgument("batch spans must have equal length");
  std::vector<double> th(n), xh(n);
  const double inv = 1.0 / chart.alpha();
  for (std::size_t i = 0; i < n; ++i) {
    th[i] = t[i] * inv;
    xh[i] = x[i] * inv;
  }
  kernels::active().diamond_to_rindler(th.data(), xh.data(), t_tilde.data(), x_tilde.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    t_tilde[i] *= chart.alpha_tilde();
    x_tilde[i] *= chart.alpha_tilde();
  }
}

}  // namespace diamond::geometry
