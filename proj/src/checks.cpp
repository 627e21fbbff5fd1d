#include "diamond/checks.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "diamond/entanglement.hpp"
#include "diamond/errors.hpp"
#include "diamond/geometry.hpp"
#include "diamond/modes.hpp"

namespace diamond::checks {

namespace {

using geometry::DiamondChart;
using geometry::EventCoords;
using geometry::Region;
using geometry::Wedge;
using states::TruncationPolicy;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.2e", v); }

struct Outcome {
  bool pass;
  std::string detail;
};

// ---- 1, 2: figure curves --------------------------------------------------

std::vector<double> figure_grid() {
  std::vector<double> g(101);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 0.05 * static_cast<double>(i);
  return g;
}

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1]) return false;
  return true;
}

Outcome check_fig3(std::uint64_t) {
  std::vector<double> y;
  for (double r : figure_grid()) y.push_back(entanglement::log_negativity(r));
  const bool mono = nonincreasing(y);
  const bool start = y.front() == 1.0;
  const bool end = y.back() < 0.01;
  return {mono && start && end, std::string("monotone=") + (mono ? "yes" : "no") + " N(0)=" + fmt("%.17g", y.front()) +
                                    " N(5)=" + sci(y.back())};
}

Outcome check_fig4(std::uint64_t) {
  std::vector<double> y;
  for (double r : figure_grid()) y.push_back(entanglement::mutual_information(r));
  const bool mono = nonincreasing(y);
  const bool start = y.front() == 2.0;
  const bool end = y.back() > 1.0 && y.back() < 1.05;
  return {mono && start && end, std::string("monotone=") + (mono ? "yes" : "no") + " I(0)=" + fmt("%.17g", y.front()) +
                                    " I(5)=" + fmt("%.10f", y.back())};
}

// ---- 3, 4: partial-transpose spectrum ---------------------------------------

constexpr std::array<double, 6> kPptRadii = {0.1, 0.3, 0.6, 1.0, 2.0, 4.0};
constexpr std::size_t kPptNMax = 80;

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NonConvergence("dense eigensolver failed", {0.0, 0.0}, 0.0);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

Outcome check_ppt_oracle(std::uint64_t) {
  double worst = 0.0;
  std::size_t left = 0;
  for (double r : kPptRadii) {
    std::vector<double> closed = entanglement::ppt_spectrum_closed_form(r, TruncationPolicy::fixed(kPptNMax)).values();
    std::sort(closed.begin(), closed.end());
    // One extra block so every closed-form block has both neighbours in the
    // truncated matrix; the three edge eigenvalues stay unmatched.
    const std::size_t n = kPptNMax + 1;
    const states::BipartiteState rho = states::build_rho_ad(r, states::FockTruncation{n, states::truncation_tail(r, n)});
    const Matching m = match_sorted(closed, sorted_eigenvalues(dense_partial_transpose(rho.dense(), n)));
    worst = std::max(worst, m.max_error);
    left = std::max(left, m.unmatched);
  }
  return {worst < 1e-8 && left == 3, "max|d|=" + sci(worst) + " unmatched=" + std::to_string(left)};
}

Outcome check_negative_eigenvalue(std::uint64_t) {
  constexpr std::array<double, 10> radii = {0.1, 0.3, 0.6, 1.0, 2.0, 4.0, 5.0, 8.0, 10.0, 20.0};
  std::size_t bad = 0;
  double largest = -std::numeric_limits<double>::infinity();
  for (double r : radii) {
    // n = 0..n_max inclusive.
    const auto s = entanglement::ppt_spectrum_closed_form(r, TruncationPolicy::fixed(kPptNMax + 1));
    for (const auto& [plus, minus] : s.pairs) {
      largest = std::max(largest, minus);
      if (!(minus < 0.0)) ++bad;
    }
  }
  return {bad == 0, "nonnegative=" + std::to_string(bad) + " max(lambda_-)=" + sci(largest)};
}

// ---- 5, 6: modes ---------------------------------------------------------------

Outcome check_bogoliubov(std::uint64_t) {
  constexpr std::array<double, 5> grid = {0.5, 1.0, 2.0, 4.0, 8.0};
  const DiamondChart chart = DiamondChart::make(1.0);
  double worst = 0.0;
  for (double w : grid) {
    for (double k : grid) {
      for (auto kind : {modes::CoefKind::Alpha, modes::CoefKind::Beta}) {
        const auto c = modes::bogoliubov_closed_form(chart, w, k, kind);
        const auto q = modes::bogoliubov_quadrature(chart, w, k, kind, modes::Support::Int);
        worst = std::max(worst, std::abs(c - q) / std::abs(q));
      }
    }
  }
  return {worst < 1e-6, "max rel dev=" + sci(worst)};
}

Outcome check_thermality(std::uint64_t) {
  double worst_x = 0.0;
  double worst_n = 0.0;
  double worst_be = 0.0;
  const DiamondChart chart = DiamondChart::make(1.0);
  for (int i = 0; i <= 199; ++i) {
    const double w = 0.1 + (20.0 - 0.1) * i / 199.0;
    const double boltz = std::exp(-std::numbers::pi * w);
    const auto s = modes::squeezing_from_frequency(w);
    const double t = std::tanh(s.r);
    worst_x = std::max(worst_x, std::fabs(t * t - boltz));
    const double n = modes::thermal_occupation(s);
    worst_n = std::max(worst_n, std::fabs(n / (1.0 + n) - boltz));
    // Bose-Einstein at the diamond temperature, omega = w / alpha.
    const double be = 1.0 / std::expm1(w / chart.temperature());
    worst_be = std::max(worst_be, std::fabs(n - be) / be);
  }
  return {worst_x <= 1e-15 && worst_n <= 1e-15 && worst_be <= 1e-12,
          "tanh^2 dev=" + sci(worst_x) + " n/(1+n) dev=" + sci(worst_n) + " BE rel=" + sci(worst_be)};
}

// ---- 7: geometry -----------------------------------------------------------------

struct Signs {
  double v, u;
};

// Light-cone signs of (V~, U~) per wedge.
constexpr Signs wedge_signs(Wedge w) {
  switch (w) {
    case Wedge::R: return {+1.0, -1.0};
    case Wedge::L: return {-1.0, +1.0};
    case Wedge::F: return {+1.0, +1.0};
    case Wedge::P: return {-1.0, -1.0};
  }
  return {0.0, 0.0};
}

constexpr std::array<Wedge, 4> kWedges = {Wedge::R, Wedge::L, Wedge::F, Wedge::P};
constexpr std::array<Region, 4> kRegions = {Region::D, Region::DBar, Region::DBarBar_FutureImage,
                                            Region::DBarBar_PastImage};

Region region_of(Wedge w) {
  switch (w) {
    case Wedge::R: return Region::D;
    case Wedge::L: return Region::DBar;
    case Wedge::F: return Region::DBarBar_FutureImage;
    case Wedge::P: return Region::DBarBar_PastImage;
  }
  return Region::Boundary;
}

bool in_wedge(double t, double x, Wedge w) {
  switch (w) {
    case Wedge::R: return x > std::fabs(t);
    case Wedge::L: return x < -std::fabs(t);
    case Wedge::F: return t > std::fabs(x);
    case Wedge::P: return t < -std::fabs(x);
  }
  return false;
}

// Region membership straight from |V|, |U| against alpha.
bool in_region(double t, double x, double alpha, Region r) {
  const double v = std::fabs(t + x) / alpha;
  const double u = std::fabs(t - x) / alpha;
  switch (r) {
    case Region::D: return v < 1.0 && u < 1.0;
    case Region::DBar: return v > 1.0 && u > 1.0;
    case Region::DBarBar_FutureImage: return v < 1.0 && u > 1.0;
    case Region::DBarBar_PastImage: return v > 1.0 && u < 1.0;
    case Region::Boundary: return false;
  }
  return false;
}

// Hatted light-cone coordinates of a random point in a diamond region.
Signs sample_region(std::mt19937_64& rng, Region r) {
  std::uniform_real_distribution<double> in(-0.98, 0.98);
  std::uniform_real_distribution<double> out(std::log(1.02), 4.0);
  std::bernoulli_distribution coin;
  auto outside = [&] { return (coin(rng) ? 1.0 : -1.0) * std::exp(out(rng)); };
  switch (r) {
    case Region::D: return {in(rng), in(rng)};
    case Region::DBar: return {outside(), outside()};
    case Region::DBarBar_FutureImage: return {in(rng), outside()};
    case Region::DBarBar_PastImage: return {outside(), in(rng)};
    case Region::Boundary: break;
  }
  return {0.0, 0.0};
}

double rel_dev(double a1, double a2, double b1, double b2) {
  const double scale = std::max({std::fabs(a1), std::fabs(a2), std::numeric_limits<double>::min()});
  return std::max(std::fabs(a1 - b1), std::fabs(a2 - b2)) / scale;
}

double round_trip_error(std::mt19937_64& rng, const DiamondChart& chart) {
  constexpr int kPoints = 10000;
  const double a = chart.alpha();
  const double at = chart.alpha_tilde();
  double worst = 0.0;
  std::uniform_real_distribution<double> mag(-4.0, 4.0);
  for (Wedge w : kWedges) {
    const Signs sg = wedge_signs(w);
    for (int i = 0; i < kPoints;) {
      const double vt = sg.v * std::exp(mag(rng));
      const double ut = sg.u * std::exp(mag(rng));
      if (std::fabs(1.0 + vt) < 0.02 || std::fabs(1.0 - ut) < 0.02) continue;
      ++i;
      const auto p = EventCoords::minkowski_rindler(0.5 * at * (vt + ut), 0.5 * at * (vt - ut));
      const auto back = geometry::diamond_to_rindler(chart, geometry::rindler_to_diamond(chart, p));
      worst = std::max(worst, rel_dev(p.c1, p.c2, back.c1, back.c2));
    }
  }
  for (Region r : kRegions) {
    for (int i = 0; i < kPoints; ++i) {
      const Signs h = sample_region(rng, r);
      const auto p = EventCoords::minkowski_diamond(0.5 * a * (h.v + h.u), 0.5 * a * (h.v - h.u));
      const auto back = geometry::rindler_to_diamond(chart, geometry::diamond_to_rindler(chart, p));
      worst = std::max(worst, rel_dev(p.c1, p.c2, back.c1, back.c2));
    }
  }
  return worst;
}

double lambda_independence_error(std::mt19937_64& rng, double alpha) {
  constexpr std::array<double, 4> lambdas = {0.5, 1.0, 2.0, 5.0};
  double worst = 0.0;
  for (Region r : kRegions) {
    for (int i = 0; i < 1000; ++i) {
      const Signs h = sample_region(rng, r);
      const auto p = EventCoords::minkowski_diamond(0.5 * alpha * (h.v + h.u), 0.5 * alpha * (h.v - h.u));
      const auto ref = geometry::diamond_coords(DiamondChart::make(alpha, lambdas[0]), p);
      for (double l : lambdas) {
        const auto q = geometry::diamond_coords(DiamondChart::make(alpha, l), p);
        worst = std::max(worst, std::max(std::fabs(q.c1 - ref.c1), std::fabs(q.c2 - ref.c2)) / alpha);
      }
    }
  }
  return worst;
}

// Eight correspondences: each region lands in its wedge, each wedge in its region.
int correspondence_failures(const DiamondChart& chart) {
  const double a = chart.alpha();
  const double at = chart.alpha_tilde();
  int failures = 0;
  constexpr std::array<double, 5> inner = {-0.9, -0.4, 0.0, 0.3, 0.95};
  constexpr std::array<double, 5> outer = {-30.0, -1.5, 1.05, 2.0, 7.0};
  for (Wedge w : kWedges) {
    const Region r = region_of(w);
    bool ok = true;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      const double v = (r == Region::D || r == Region::DBarBar_FutureImage) ? inner[i] : outer[i];
      const double u = (r == Region::D || r == Region::DBarBar_PastImage) ? inner[(i + 2) % 5] : outer[(i + 2) % 5];
      const auto p = EventCoords::minkowski_diamond(0.5 * a * (v + u), 0.5 * a * (v - u));
      const auto c = geometry::classify_region(chart, p);
      const auto img = geometry::diamond_to_rindler(chart, p);
      ok = ok && c.region == r && c.wedge == w && in_wedge(img.c1, img.c2, w);
    }
    failures += ok ? 0 : 1;
  }
  constexpr std::array<double, 5> mags = {0.01, 0.5, 0.9, 3.0, 200.0};
  for (Wedge w : kWedges) {
    const Signs sg = wedge_signs(w);
    const Region r = region_of(w);
    bool ok = true;
    for (std::size_t i = 0; i < mags.size(); ++i) {
      const double vt = sg.v * mags[i];
      const double ut = sg.u * mags[(i + 3) % 5];
      if (std::fabs(1.0 + vt) < 0.02 || std::fabs(1.0 - ut) < 0.02) continue;
      const auto p = EventCoords::minkowski_rindler(0.5 * at * (vt + ut), 0.5 * at * (vt - ut));
      const auto img = geometry::rindler_to_diamond(chart, p);
      const auto c = geometry::classify_region(chart, p);
      ok = ok && in_region(img.c1, img.c2, a, r) && c.region == r;
    }
    failures += ok ? 0 : 1;
  }
  return failures;
}

// Finite-difference pullback of -dt^2 + dx^2 through map(c1, c2) -> (t, x),
// compared with g * (-dc1^2 + dc2^2). Returns the relative deviation.
// g < 0 means c1 is the spacelike coordinate.
double pullback_error(const std::function<std::pair<double, double>(double, double)>& map, double c1, double c2,
                      double g, double h) {
  // Five-point stencil: truncation error O(h^4).
  auto deriv = [&](double d1, double d2) {
    const auto [ta, xa] = map(c1 + 2 * h * d1, c2 + 2 * h * d2);
    const auto [tb, xb] = map(c1 + h * d1, c2 + h * d2);
    const auto [tc, xc] = map(c1 - h * d1, c2 - h * d2);
    const auto [td, xd] = map(c1 - 2 * h * d1, c2 - 2 * h * d2);
    return std::pair{(-ta + 8 * tb - 8 * tc + td) / (12 * h), (-xa + 8 * xb - 8 * xc + xd) / (12 * h)};
  };
  const auto [t1, x1] = deriv(1.0, 0.0);
  const auto [t2, x2] = deriv(0.0, 1.0);
  const double g11 = -t1 * t1 + x1 * x1;
  const double g22 = -t2 * t2 + x2 * x2;
  const double g12 = -t1 * t2 + x1 * x2;
  return std::max({std::fabs(g11 + g), std::fabs(g22 - g), std::fabs(g12)}) / std::fabs(g);
}

double metric_error(std::mt19937_64& rng, const DiamondChart& chart) {
  const double at = chart.alpha_tilde();
  const double lam = chart.lambda();
  double worst = 0.0;
  std::uniform_real_distribution<double> mag(-2.0, 2.0);
  auto to_diamond = [&chart](double tt, double xt) {
    const auto q = geometry::rindler_to_diamond(chart, EventCoords::minkowski_rindler(tt, xt));
    return std::pair{q.c1, q.c2};
  };
  for (Wedge w : kWedges) {
    const Region r = region_of(w);
    const Signs sg = wedge_signs(w);
    auto from_eta_xi = [&chart, r](double eta, double xi) {
      const auto q = geometry::diamond_coords_to_minkowski(chart, EventCoords::diamond(eta, xi, r));
      return std::pair{q.c1, q.c2};
    };
    for (int i = 0; i < 200;) {
      const double vt = sg.v * std::exp(mag(rng));
      const double ut = sg.u * std::exp(mag(rng));
      if (std::fabs(1.0 + vt) < 0.1 || std::fabs(1.0 - ut) < 0.1) continue;
      ++i;
      const double tt = 0.5 * at * (vt + ut);
      const double xt = 0.5 * at * (vt - ut);
      const double omega = geometry::conformal_factor(chart, EventCoords::minkowski_rindler(tt, xt));
      const double f = lam / omega;
      const double h = 1e-4 * std::max({std::fabs(tt), std::fabs(xt), at});
      worst = std::max(worst, pullback_error(to_diamond, tt, xt, f * f, h));

      // Same metric through (eta, xi): (lambda kappa / Omega)^2 e^{2 a xi}.
      // On the F and P patches t~ and x~ trade places, so eta is spacelike.
      const auto [t, x] = to_diamond(tt, xt);
      const auto dc = geometry::diamond_coords(chart, EventCoords::minkowski_diamond(t, x));
      const double s = chart.lambda() * chart.kappa() / omega;
      const double sign = (w == Wedge::F || w == Wedge::P) ? -1.0 : 1.0;
      const double g = sign * s * s * std::exp(2.0 * chart.accel() * dc.c2);
      worst = std::max(worst, pullback_error(from_eta_xi, dc.c1, dc.c2, g, 1e-4 * chart.alpha()));
    }
  }
  return worst;
}

Outcome check_geometry(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const DiamondChart chart = DiamondChart::make(1.0, 2.0);
  const double rt = std::max(round_trip_error(rng, chart), round_trip_error(rng, DiamondChart::make(3.5, 0.7)));
  const double li = std::max(lambda_independence_error(rng, 1.0), lambda_independence_error(rng, 2.5));
  const int corr = correspondence_failures(chart) + correspondence_failures(DiamondChart::make(2.0, 5.0));
  const double met = std::max(metric_error(rng, chart), metric_error(rng, DiamondChart::make(0.8, 1.3)));
  const bool pass = rt < 1e-12 && li < 1e-12 && corr == 0 && met < 1e-6;
  return {pass, "round-trip=" + sci(rt) + " lambda-dev=" + sci(li) + " correspondences failed=" +
                    std::to_string(corr) + " metric=" + sci(met)};
}

// ---- 8, 9: states and entropies -------------------------------------------------

Outcome check_state_integrity(std::uint64_t) {
  constexpr std::array<double, 4> radii = {0.0, 0.5, 1.0, 2.0};
  double tr_excess = 0.0, min_eig = 0.0, alice = 0.0, dave = 0.0;
  bool pass = true;
  for (double r : radii) {
    const auto trunc = states::choose_truncation(r, TruncationPolicy::automatic());
    const auto rho = states::build_rho_ad(r, trunc);
    const Eigen::MatrixXd m = rho.dense();
    const std::size_t n = trunc.n_max;
    const double tail = trunc.tail_bound;

    const double tr = m.trace();
    tr_excess = std::max(tr_excess, std::fabs(1.0 - tr) - tail);
    pass = pass && std::fabs(1.0 - tr) <= tail + 1e-14;

    const double lo = sorted_eigenvalues(m).front();
    min_eig = std::min(min_eig, lo);
    pass = pass && lo >= -1e-12;

    const Eigen::MatrixXd ra = trace_out_dave(m, n);
    const double da = std::max({std::fabs(ra(0, 0) - 0.5), std::fabs(ra(1, 1) - 0.5), std::fabs(ra(0, 1))});
    alice = std::max(alice, da);
    pass = pass && da <= tail + 1e-12;

    const Eigen::MatrixXd rd = trace_out_alice(m, n);
    double dd = (rd - Eigen::MatrixXd(rd.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    for (std::size_t d = 0; d < n; ++d)
      dd = std::max(dd, std::fabs(rd(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) - states::dave_weight(r, d)));
    dave = std::max(dave, dd);
    pass = pass && dd <= 1e-12;
    // The last occupation only holds the weight that flowed in from block n-1.
    const double last = rd(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    pass = pass && std::fabs(last - states::dave_weight(r, n)) <= tail + 1e-12;
  }
  return {pass, "trace excess over tail=" + sci(std::max(tr_excess, 0.0)) + " min eig=" + sci(min_eig) +
                    " rho_A dev=" + sci(alice) + " rho_D dev=" + sci(dave)};
}

Outcome check_entropy_endpoints(std::uint64_t) {
  const auto s0 = entanglement::entropies(0.0);
  const bool at_zero = std::fabs(s0.s_a - 1.0) < 1e-3 && std::fabs(s0.s_d - 1.0) < 1e-3 && std::fabs(s0.s_ad) < 1e-3;
  const auto s10 = entanglement::entropies(10.0);
  const bool at_large =
      std::fabs(s10.s_a - 1.0) < 1e-3 && std::fabs(s10.s_d - 1.0) < 1e-3 && std::fabs(s10.s_ad - 1.0) < 1e-3;
  double mi = 0.0;
  for (double r : {0.5, 1.0, 2.0}) {
    const auto s = entanglement::entropies(r);
    mi = std::max(mi, std::fabs(s.s_a + s.s_d - s.s_ad - entanglement::mutual_information(r)));
  }
  const bool recombine = mi < 1e-9;
  return {at_zero && at_large && recombine,
          "S(0)=(" + fmt("%.6g", s0.s_a) + "," + fmt("%.6g", s0.s_d) + "," + fmt("%.6g", s0.s_ad) + ") S(10)=(" +
              fmt("%.6g", s10.s_a) + "," + fmt("%.6g", s10.s_d) + "," + fmt("%.6g", s10.s_ad) + ") target (1,1,1)" +
              " recombination dev=" + sci(mi)};
}

struct Entry {
  const char* name;
  Outcome (*fn)(std::uint64_t);
  double budget;  // seconds; 0 for none
};

constexpr std::array<Entry, 9> kChecks = {{
    {"fig3-log-negativity", check_fig3, 10.0},
    {"fig4-mutual-information", check_fig4, 10.0},
    {"ppt-dense-oracle", check_ppt_oracle, 30.0},
    {"negative-eigenvalue", check_negative_eigenvalue, 0.0},
    {"bogoliubov-quadrature", check_bogoliubov, 30.0},
    {"thermality", check_thermality, 0.0},
    {"geometry", check_geometry, 0.0},
    {"state-integrity", check_state_integrity, 0.0},
    {"entropy-endpoints", check_entropy_endpoints, 0.0},
}};

}  // namespace

CheckResult run_check(int id, std::uint64_t seed) {
  if (id < kFirstCheck || id > kLastCheck) throw InvalidArgument("no check " + std::to_string(id));
  const Entry& e = kChecks[static_cast<std::size_t>(id - 1)];
  CheckResult out;
  out.id = id;
  out.name = e.name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = e.fn(seed);
    out.pass = o.pass;
    out.detail = o.detail;
  } catch (const NumericError& ex) {
    out.pass = false;
    out.detail = ex.kind() + ": " + ex.what();
  } catch (const std::exception& ex) {
    out.pass = false;
    out.detail = std::string("error: ") + ex.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (e.budget > 0.0 && out.seconds >= e.budget) {
    out.pass = false;
    out.detail += " over time budget " + fmt("%.0f", e.budget) + " s";
  }
  return out;
}

std::vector<CheckResult> run_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (int id = kFirstCheck; id <= kLastCheck; ++id) out.push_back(run_check(id, seed));
  return out;
}

std::string format_line(const CheckResult& r, bool with_time) {
  std::string s = std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail;
  if (with_time) s += " (" + fmt("%.2f", r.seconds) + " s)";
  return s;
}

Eigen::MatrixXd dense_partial_transpose(const Eigen::MatrixXd& rho, std::size_t n_max) {
  const auto m = static_cast<Eigen::Index>(n_max + 1);
  if (rho.rows() != 2 * m || rho.cols() != 2 * m) throw InvalidArgument("dimension does not match n_max");
  Eigen::MatrixXd out(rho.rows(), rho.cols());
  for (Eigen::Index a = 0; a < 2; ++a)
    for (Eigen::Index b = 0; b < 2; ++b) out.block(a * m, b * m, m, m) = rho.block(b * m, a * m, m, m);
  return out;
}

Eigen::MatrixXd trace_out_dave(const Eigen::MatrixXd& rho, std::size_t n_max) {
  const auto m = static_cast<Eigen::Index>(n_max + 1);
  Eigen::MatrixXd out(2, 2);
  for (Eigen::Index a = 0; a < 2; ++a)
    for (Eigen::Index b = 0; b < 2; ++b) out(a, b) = rho.block(a * m, b * m, m, m).trace();
  return out;
}

Eigen::MatrixXd trace_out_alice(const Eigen::MatrixXd& rho, std::size_t n_max) {
  const auto m = static_cast<Eigen::Index>(n_max + 1);
  return rho.block(0, 0, m, m) + rho.block(m, m, m, m);
}

Matching match_sorted(const std::vector<double>& closed, const std::vector<double>& oracle) {
  const std::size_t k = closed.size();
  const std::size_t n = oracle.size();
  if (k > n) throw InvalidArgument("more closed-form values than oracle values");
  // best[i][j]: minimal worst deviation pairing closed[0..i) within oracle[0..j).
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(n + 1, 0.0), cur(n + 1);
  for (std::size_t i = 1; i <= k; ++i) {
    std::fill(cur.begin(), cur.end(), inf);
    for (std::size_t j = i; j <= n; ++j) {
      const double take = std::max(prev[j - 1], std::fabs(closed[i - 1] - oracle[j - 1]));
      cur[j] = std::min(cur[j - 1], take);
    }
    std::swap(prev, cur);
  }
  return {k == 0 ? 0.0 : prev[n], n - k};
}

}  // namespace diamond::checks
