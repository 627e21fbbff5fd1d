#include "diamond/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>

#include "detail.hpp"
#include "diamond/debug.hpp"
#include "diamond/errors.hpp"
#include "diamond/kernels.hpp"
#include "diamond/modes.hpp"
#include "diamond/series.hpp"

namespace diamond::entanglement {

namespace {

using detail::num;
using detail::RParams;

constexpr double kLn2 = std::numbers::ln2;

void require_r(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("squeezing parameter must be finite and >= 0, got " + num(r));
  if (r > kMaxR) throw DomainCap("r = " + num(r) + " exceeds the supported maximum " + num(kMaxR));
}

// How a series over blocks is evaluated: directly for n <= n_max (block
// n_max of the partial transpose still holds retained weight), then an
// Euler-Maclaurin tail when the automatic truncation would pass the cap.
struct Plan {
  RParams p;
  kernels::SpectralConstants k;
  std::size_t n_max = 0;
  std::size_t n_direct = 0;
  bool accelerate = false;
  double tail = 0.0;  // truncation tail when not accelerated
};

Plan make_plan(double r, const TruncationPolicy& policy) {
  Plan pl;
  pl.p = RParams::make(r);
  pl.k = kernels::SpectralConstants::from_r(r);
  if (policy.fixed_n_max) {
    const states::FockTruncation t = states::choose_truncation(r, policy);
    pl.n_max = t.n_max;
    pl.n_direct = t.n_max + 1;
    pl.tail = t.tail_bound;
    return pl;
  }
  const double tol = policy.tolerance.value_or(states::kDefaultTailTolerance);
  const states::FockTruncation t = states::choose_truncation_clipped(r, policy);
  pl.n_max = t.n_max;
  pl.n_direct = t.n_max + 1;
  if (t.tail_bound >= tol) {
    pl.accelerate = true;
  } else {
    pl.tail = t.tail_bound;
  }
  return pl;
}

struct Summed {
  double value = 0.0;
  double error = 0.0;
};

Summed with_tail(const Plan& pl, double direct, const std::function<double(double)>& term) {
  if (!pl.accelerate) return {direct, pl.tail};
  const series::TailSum t = series::euler_maclaurin_tail(term, static_cast<double>(pl.n_direct), -pl.p.ln_x);
  return {direct + t.value, t.error};
}

// Block quantities for real n >= 1, used only by the tails where x is close
// to one and x^n comes from exp(n ln x).
struct ContinuousBlock {
  double a, b, root;
};

ContinuousBlock continuous_block(const RParams& p, double n) {
  const double e = std::exp((n - 1.0) * p.ln_x);
  const double a = e * (n * p.inv_c2 + p.x * p.x);
  const double b = 2.0 * e * p.x * std::sqrt(p.inv_c2);
  const double m = std::max(a, b);
  const double q = std::min(a, b) / m;
  return {a, b, m * std::sqrt(1.0 + q * q)};
}

Summed sigma_sum(const Plan& pl) {
  const double direct = kernels::active().sigma_series(pl.k, 0, pl.n_direct);
  return with_tail(pl, direct, [&pl](double n) { return 0.5 * pl.p.inv_c2 * continuous_block(pl.p, n).root; });
}

Summed abs_minus_sum(const Plan& pl) {
  const double direct = kernels::active().sum_abs_lambda_minus(pl.k, 0, pl.n_direct);
  return with_tail(pl, direct, [&pl](double n) {
    const ContinuousBlock q = continuous_block(pl.p, n);
    return 0.25 * pl.p.inv_c2 * (q.b * (q.b / (q.root + q.a)));
  });
}

// -p log2 p from ln p.
double plogp_bits(double ln_p) {
  const double p = std::exp(ln_p);
  return p == 0.0 ? 0.0 : -p * ln_p / kLn2;
}

// ln of the Dave weight d_n = x^{n-1} (x + n / c^2) / (2 c^2), n >= 1.
double ln_dave(const RParams& p, double n) {
  return (n - 1.0) * p.ln_x + std::log(p.x + n * p.inv_c2) - p.ln_2c2;
}

// ln of the rho_AD eigenvalue x^n (1 + (n+1)/c^2) / (2 c^2).
double ln_joint(const RParams& p, double n) {
  return n * p.ln_x + std::log1p((n + 1.0) * p.inv_c2) - p.ln_2c2;
}

// x^n (D ln D - P ln P) in bits, D = 1 + n/s^2 and P = 1 + (n+1)/c^2.
// With delta = D - P = (n - s^2)/(s^2 c^2) the bracket is
// delta ln D + P log1p(delta/P), free of the cancellation between the two
// products when r is large.
double mi_term(const RParams& p, double n) {
  const double s2 = p.sinh * p.sinh;
  const double big_p = 1.0 + (n + 1.0) * p.inv_c2;
  const double ratio = (n - s2) / s2 * p.inv_c2 / big_p;
  const double second = std::exp(n * p.ln_x) * big_p * std::log1p(ratio);
  if (n == 0.0) return second / kLn2;
  // x^n delta = x^{n-1} (n - s^2) / c^4, since x / s^2 = 1 / c^2.
  const double first = std::exp((n - 1.0) * p.ln_x) * (n - s2) * p.inv_c2 * p.inv_c2 * p.ln_one_plus_n_over_s2(n);
  return (first + second) / kLn2;
}

template <class F>
double direct_sum(std::size_t lo, std::size_t hi, F&& f) {
  double s = 0.0;
  for (std::size_t n = lo; n < hi; ++n) s += f(static_cast<double>(n));
  return s;
}

struct EntropiesWithError {
  Entropies s;
  double error = 0.0;
};

EntropiesWithError entropies_impl(double r, const TruncationPolicy& policy) {
  require_r(r);
  if (r == 0.0) return {{1.0, 1.0, 0.0}, 0.0};
  const Plan pl = make_plan(r, policy);
  const RParams& p = pl.p;
  auto d_term = [&p](double n) { return plogp_bits(ln_dave(p, n)); };
  auto j_term = [&p](double n) { return plogp_bits(ln_joint(p, n)); };
  const Summed sd = with_tail(pl, plogp_bits(-p.ln_2c2) + direct_sum(1, pl.n_direct, d_term), d_term);
  const Summed sj = with_tail(pl, direct_sum(0, pl.n_direct, j_term), j_term);
  return {{1.0, sd.value, sj.value}, std::max(sd.error, sj.error)};
}

struct Valued {
  double value;
  double error;
};

Valued log_negativity_impl(double r, const TruncationPolicy& policy) {
  require_r(r);
  const double f = debug::factor(debug::Fault::LogNegativity);
  if (r == 0.0) return {1.0 * f, 0.0};
  const Plan pl = make_plan(r, policy);
  const Summed s = sigma_sum(pl);
  return {std::log2(0.5 * pl.p.inv_c2 + s.value) * f, s.error};
}

Valued negativity_impl(double r, const TruncationPolicy& policy) {
  require_r(r);
  if (r == 0.0) return {0.5, 0.0};
  const Plan pl = make_plan(r, policy);
  const Summed s = abs_minus_sum(pl);
  return {s.value, s.error};
}

Valued mutual_information_impl(double r, const TruncationPolicy& policy) {
  require_r(r);
  const double f = debug::factor(debug::Fault::MutualInformation);
  if (r == 0.0) return {2.0 * f, 0.0};
  const Plan pl = make_plan(r, policy);
  const RParams& p = pl.p;
  auto term = [&p](double n) { return mi_term(p, n); };
  const Summed s = with_tail(pl, direct_sum(0, pl.n_direct, term), term);
  const double value = 1.0 - 0.5 * p.ln_x / kLn2 - 0.5 * p.inv_c2 * s.value;
  return {value * f, s.error};
}

}  // namespace

std::vector<double> PptSpectrum::values() const {
  std::vector<double> out;
  out.reserve(1 + 2 * pairs.size());
  out.push_back(lambda0);
  for (const auto& [plus, minus] : pairs) {
    out.push_back(plus);
    out.push_back(minus);
  }
  return out;
}

PptSpectrum ppt_spectrum_closed_form(double r, const TruncationPolicy& policy) {
  require_r(r);
  const states::FockTruncation t = states::choose_truncation(r, policy);
  const RParams p = RParams::make(r);
  const double f = debug::factor(debug::Fault::PptEigenvalues);
  PptSpectrum s;
  s.r = r;
  s.n_max = t.n_max;
  s.tail_bound = t.tail_bound;
  s.lambda0 = 0.5 * p.inv_c2 * f;
  std::vector<double> plus(t.n_max), minus(t.n_max);
  kernels::active().ppt_pairs(kernels::SpectralConstants::from_r(r), 0, t.n_max, plus.data(), minus.data());
  s.pairs.reserve(t.n_max);
  for (std::size_t n = 0; n < t.n_max; ++n) s.pairs.emplace_back(plus[n] * f, minus[n] * f);
  return s;
}

std::vector<double> ppt_spectrum_oracle(const states::BipartiteState& state) {
  const Eigen::MatrixXd m = state.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NonConvergence("dense eigensolver failed", {0.0, 0.0}, 0.0);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

double log_negativity(double r, const TruncationPolicy& policy) { return log_negativity_impl(r, policy).value; }

double log_negativity_from_spectrum(double r, const TruncationPolicy& policy) {
  return std::log2(1.0 + 2.0 * negativity(r, policy));
}

double negativity(double r, const TruncationPolicy& policy) { return negativity_impl(r, policy).value; }

Entropies entropies(double r, const TruncationPolicy& policy) { return entropies_impl(r, policy).s; }

double mutual_information(double r, const TruncationPolicy& policy) {
  return mutual_information_impl(r, policy).value;
}

EntanglementReport report(double r, const TruncationPolicy& policy) {
  require_r(r);
  const Valued ln = log_negativity_impl(r, policy);
  const Valued ng = negativity_impl(r, policy);
  const EntropiesWithError e = entropies_impl(r, policy);
  const Valued mi = mutual_information_impl(r, policy);
  EntanglementReport out;
  out.r = r;
  out.neg_log = ln.value;
  out.negativity = ng.value;
  out.s_a = e.s.s_a;
  out.s_d = e.s.s_d;
  out.s_ad = e.s.s_ad;
  out.mutual_info = mi.value;
  if (r == 0.0) {
    out.n_max_used = 1;
    out.tail_bound = 0.0;
  } else {
    const Plan pl = make_plan(r, policy);
    out.n_max_used = pl.n_max;
    out.tail_bound = std::max({ln.error, ng.error, e.error, mi.error});
  }
  return out;
}

std::vector<SweepPoint> sweep(const std::vector<double>& r_grid, const TruncationPolicy& policy, unsigned threads) {
  std::vector<SweepPoint> out(r_grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t i = next++; i < r_grid.size(); i = next++) {
      SweepPoint& pt = out[i];
      pt.r = r_grid[i];
      try {
        pt.report = report(r_grid[i], policy);
      } catch (const NumericError& e) {
        pt.error_kind = e.kind();
        pt.error_message = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(r_grid.size())));
  if (n == 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

std::vector<double> r_from_lifetimes(const std::vector<double>& lifetimes, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("omega must be finite and > 0, got " + num(omega));
  std::vector<double> out;
  out.reserve(lifetimes.size());
  for (double t : lifetimes) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    out.push_back(modes::squeezing_from_frequency(0.5 * omega * t).r);
  }
  return out;
}

}  // namespace diamond::entanglement
