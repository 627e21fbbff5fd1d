#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "diamond/errors.hpp"
#include "diamond/specfun.hpp"

namespace diamond::specfun {

namespace {

// Kronrod abscissae on [0, 1); odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.000000000000000000000000000000000,
};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208643474296, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821,
};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697, 0.219086362515982043995534934228163,
    0.269266719309996355091226921569469, 0.295524224714752870173892994651338,
};

struct Panel {
  double lo, hi;
  cplx value;
  double error;
  double abs_value;  // integral of |f|, for the roundoff floor
};

struct ByError {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.lo > b.lo;  // deterministic tie-break
  }
};

Panel gk21(const Integrand& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const cplx fc = f(c);
  cplx kron = fc * kWgk[10];
  cplx gauss{0.0, 0.0};
  double absk = std::abs(fc) * kWgk[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    const cplx f1 = f(c - dx);
    const cplx f2 = f(c + dx);
    kron += (f1 + f2) * kWgk[j];
    absk += (std::abs(f1) + std::abs(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  const cplx value = kron * h;
  const double err = std::abs((kron - gauss) * h);
  return {lo, hi, value, err, absk * std::fabs(h)};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, const QuadratureSpec& spec) {
  if (!(spec.lo < spec.hi) || !std::isfinite(spec.lo) || !std::isfinite(spec.hi))
    throw InvalidArgument("quadrature interval must be finite with lo < hi");
  if (!(spec.rel_tol > 0.0)) throw InvalidArgument("quadrature rel_tol must be positive");

  std::size_t panels = 1;
  if (spec.oscillation_hint > 0.0) {
    const double half_periods = (spec.hi - spec.lo) * spec.oscillation_hint / std::numbers::pi;
    panels = static_cast<std::size_t>(std::clamp(std::ceil(half_periods), 1.0, 4096.0));
  }

  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  QuadratureResult res;
  const double width = (spec.hi - spec.lo) / static_cast<double>(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    const double a = spec.lo + width * static_cast<double>(i);
    const double b = (i + 1 == panels) ? spec.hi : spec.lo + width * static_cast<double>(i + 1);
    heap.push(gk21(f, a, b));
    res.evaluations += 21;
  }

  auto totals = [&heap](cplx& v, double& e, double& absv) {
    // Sum in interval order so the result does not depend on heap layout.
    std::vector<Panel> all;
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    v = 0.0;
    e = 0.0;
    absv = 0.0;
    for (const auto& p : all) {
      v += p.value;
      e += p.error;
      absv += p.abs_value;
    }
  };

  cplx value;
  double error = 0.0;
  double absv = 0.0;
  totals(value, error, absv);
  while (true) {
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * absv;
    const double target = std::max({spec.rel_tol * std::abs(value), spec.abs_tol, floor});
    if (error <= target) break;
    if (res.subdivisions >= spec.max_subdivisions) {
      totals(value, error, absv);
      throw NonConvergence("quadrature subdivision budget exhausted", value, error);
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      totals(value, error, absv);
      throw NonConvergence("quadrature interval collapsed below machine resolution", value, error);
    }
    const Panel left = gk21(f, worst.lo, mid);
    const Panel right = gk21(f, mid, worst.hi);
    res.evaluations += 42;
    ++res.subdivisions;
    heap.push(left);
    heap.push(right);
    // Incremental totals drift; re-sum exactly every so often.
    if (res.subdivisions % 64 == 0) {
      totals(value, error, absv);
    } else {
      value += left.value + right.value - worst.value;
      error = std::max(0.0, error + left.error + right.error - worst.error);
      absv += left.abs_value + right.abs_value - worst.abs_value;
    }
  }
  totals(value, error, absv);
  res.value = value;
  res.error = error;
  return res;
}

}  // namespace diamond::specfun
