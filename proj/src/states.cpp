#include "diamond/states.hpp"

#include <cmath>

#include "detail.hpp"
#include "diamond/debug.hpp"
#include "diamond/errors.hpp"

namespace diamond::states {

namespace {

using detail::num;
using detail::RParams;

void require_r(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("squeezing parameter must be finite and >= 0, got " + num(r));
}

double block_weight(const RParams& p, std::size_t n) {
  return std::pow(p.x, static_cast<double>(n)) * 0.5 * p.inv_c2;
}

std::size_t smallest_n_max(const RParams& p, double tol, std::size_t limit) {
  if (p.x == 0.0) return 1;
  auto tail = [&p](std::size_t n) {
    const double nn = static_cast<double>(n);
    return std::exp(nn * p.ln_x + std::log1p(nn * p.inv_c2));
  };
  // The tail is at least x^N; start from where that alone reaches tol.
  double guess = std::ceil(std::log(tol) / p.ln_x);
  if (!(guess >= 1.0)) guess = 1.0;
  std::size_t n = guess > static_cast<double>(limit) ? limit + 1 : static_cast<std::size_t>(guess);
  while (n <= limit && tail(n) >= tol) n = std::max<std::size_t>(n + 1, n + n / 64);
  if (n > limit) return limit + 1;
  while (n > 1 && tail(n - 1) < tol) --n;
  return n;
}

}  // namespace

double truncation_tail(double r, std::size_t n_max) {
  require_r(r);
  const RParams p = RParams::make(r);
  if (p.x == 0.0) return 0.0;
  const double n = static_cast<double>(n_max);
  return std::exp(n * p.ln_x + std::log1p(n * p.inv_c2));
}

FockTruncation choose_truncation_clipped(double r, const TruncationPolicy& policy) {
  require_r(r);
  if (policy.fixed_n_max) {
    if (*policy.fixed_n_max < 1) throw InvalidArgument("n_max must be >= 1");
    return {*policy.fixed_n_max, truncation_tail(r, *policy.fixed_n_max)};
  }
  const double tol = policy.tolerance.value_or(kDefaultTailTolerance);
  if (!(tol > 0.0)) throw InvalidArgument("truncation tolerance must be positive");
  const std::size_t n = std::min(smallest_n_max(RParams::make(r), tol, policy.cap), policy.cap);
  return {n, truncation_tail(r, n)};
}

FockTruncation choose_truncation(double r, const TruncationPolicy& policy) {
  const FockTruncation t = choose_truncation_clipped(r, policy);
  const bool auto_mode = !policy.fixed_n_max;
  const double tol = policy.tolerance.value_or(kDefaultTailTolerance);
  if ((auto_mode || policy.tolerance) && t.tail_bound >= tol)
    throw TruncationTooSmall("n_max = " + std::to_string(t.n_max) + " leaves tail " + num(t.tail_bound) +
                                 " at r = " + num(r) + " (tolerance " + num(tol) + ")",
                             t.tail_bound);
  return t;
}

std::vector<double> unruh_vacuum_coefficients(double r, const FockTruncation& trunc) {
  require_r(r);
  const double t = std::tanh(r);
  const double inv_c = 1.0 / std::cosh(r);
  std::vector<double> out(trunc.n_max + 1);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = std::pow(t, static_cast<double>(n)) * inv_c;
  return out;
}

std::vector<double> unruh_one_particle_coefficients(double r, const FockTruncation& trunc) {
  require_r(r);
  const double t = std::tanh(r);
  const double c = std::cosh(r);
  const double inv_c2 = 1.0 / (c * c);
  std::vector<double> out(trunc.n_max);
  for (std::size_t n = 0; n < out.size(); ++n)
    out[n] = std::pow(t, static_cast<double>(n)) * std::sqrt(static_cast<double>(n + 1)) * inv_c2;
  return out;
}

double BipartiteState::trace() const noexcept {
  double s = 0.0;
  for (const auto& b : blocks_) s += b.diag0 + b.diag1;
  for (const auto& e : singles_) s += e.value;
  return s;
}

Eigen::MatrixXd BipartiteState::dense() const {
  if (trunc_.n_max > kMaxDenseBlocks)
    throw InvalidArgument("dense form limited to n_max <= " + std::to_string(kMaxDenseBlocks));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
  for (const auto& b : blocks_) {
    const auto i = static_cast<Eigen::Index>(index(b.basis[0]));
    const auto j = static_cast<Eigen::Index>(index(b.basis[1]));
    m(i, i) += b.diag0;
    m(j, j) += b.diag1;
    m(i, j) += b.coupling;
    m(j, i) += b.coupling;
  }
  for (const auto& e : singles_) {
    const auto i = static_cast<Eigen::Index>(index(e.basis));
    m(i, i) += e.value;
  }
  return m;
}

BipartiteState build_rho_ad(double r, const FockTruncation& trunc) {
  require_r(r);
  if (trunc.n_max < 1) throw InvalidArgument("n_max must be >= 1");
  const RParams p = RParams::make(r);
  BipartiteState s;
  s.r_ = r;
  s.trunc_ = trunc;
  s.rep_ = Representation::RhoAD;
  s.blocks_.reserve(trunc.n_max);
  const double inv_c = std::sqrt(p.inv_c2);
  for (std::size_t n = 0; n < trunc.n_max; ++n) {
    const double w = block_weight(p, n);
    const double gamma = std::sqrt(static_cast<double>(n + 1)) * inv_c;
    s.blocks_.push_back({n, {BasisState{0, n}, BasisState{1, n + 1}}, w, w * gamma * gamma, w * gamma});
  }
  return s;
}

BipartiteState partial_transpose(const BipartiteState& state) {
  if (state.representation() != Representation::RhoAD)
    throw InvalidArgument("partial_transpose expects rho_AD");
  const auto& rb = state.blocks();
  const std::size_t nb = rb.size();
  BipartiteState t;
  t.r_ = state.r_;
  t.trunc_ = state.trunc_;
  t.rep_ = Representation::PartialTranspose;
  t.singles_.push_back({BasisState{0, 0}, rb[0].diag0});
  t.blocks_.reserve(nb);
  for (std::size_t n = 0; n < nb; ++n) {
    // |1,n> picks up the one-particle diagonal of block n-1, |0,n+1> the
    // vacuum diagonal of block n+1; the coherence of block n moves here.
    const double d0 = n >= 1 ? rb[n - 1].diag1 : 0.0;
    const double d1 = n + 1 < nb ? rb[n + 1].diag0 : 0.0;
    t.blocks_.push_back({n, {BasisState{1, n}, BasisState{0, n + 1}}, d0, d1, rb[n].coupling});
  }
  t.singles_.push_back({BasisState{1, nb}, rb[nb - 1].diag1});
  return t;
}

SingleSystemState reduce_to_dave(const BipartiteState& state) {
  if (state.representation() != Representation::RhoAD) throw InvalidArgument("reduce_to_dave expects rho_AD");
  SingleSystemState out{Party::Dave, std::vector<double>(state.truncation().n_max + 1, 0.0),
                        state.truncation().tail_bound};
  for (const auto& b : state.blocks()) {
    out.weights[b.basis[0].d] += b.diag0;
    out.weights[b.basis[1].d] += b.diag1;
  }
  for (const auto& e : state.singles()) out.weights[e.basis.d] += e.value;
  return out;
}

SingleSystemState reduce_to_alice(const BipartiteState& state) {
  if (state.representation() != Representation::RhoAD) throw InvalidArgument("reduce_to_alice expects rho_AD");
  SingleSystemState out{Party::Alice, {0.0, 0.0}, state.truncation().tail_bound};
  for (const auto& b : state.blocks()) {
    out.weights[b.basis[0].a] += b.diag0;
    out.weights[b.basis[1].a] += b.diag1;
  }
  for (const auto& e : state.singles()) out.weights[e.basis.a] += e.value;
  return out;
}

double dave_weight(double r, std::size_t n) {
  require_r(r);
  const double f = debug::factor(debug::Fault::DaveWeights);
  if (r == 0.0) return (n <= 1 ? 0.5 : 0.0) * f;
  const RParams p = RParams::make(r);
  if (n == 0) return 0.5 * p.inv_c2 * f;
  // x^n (1 + n/s^2) = x^{n-1} (x + n / c^2)
  const double nn = static_cast<double>(n);
  return std::pow(p.x, nn - 1.0) * (p.x + nn * p.inv_c2) * 0.5 * p.inv_c2 * f;
}

double rho_ad_eigenvalue(double r, std::size_t n) {
  require_r(r);
  const RParams p = RParams::make(r);
  return block_weight(p, n) * (1.0 + static_cast<double>(n + 1) * p.inv_c2);
}

}  // namespace diamond::states
