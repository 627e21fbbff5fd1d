#pragma once

// Entanglement measures of the Alice-Dave state in closed form: the
// partial-transpose spectrum, logarithmic negativity, von Neumann entropies
// (bits) and mutual information.
//
// Series are summed directly up to the truncation chosen by the policy. In
// automatic mode, when more than the block cap would be needed (large r,
// tanh^2 r close to 1), the remainder is added as an Euler-Maclaurin tail
// and its error estimate is reported as the tail bound.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diamond/states.hpp"

namespace diamond::entanglement {

using states::TruncationPolicy;

struct PptSpectrum {
  double r = 0.0;
  double lambda0 = 0.0;
  std::vector<std::pair<double, double>> pairs;  // (lambda_+, lambda_-) for n = 0..n_max-1
  std::size_t n_max = 0;
  double tail_bound = 0.0;

  /// lambda0 followed by every pair, unsorted.
  std::vector<double> values() const;
};

PptSpectrum ppt_spectrum_closed_form(double r, const TruncationPolicy& policy = {});

/// Sorted eigenvalues of the dense matrix of a state (any representation).
std::vector<double> ppt_spectrum_oracle(const states::BipartiteState& state);

struct EntanglementReport {
  double r = 0.0;
  double neg_log = 0.0;
  double negativity = 0.0;
  double s_a = 1.0;
  double s_d = 0.0;
  double s_ad = 0.0;
  double mutual_info = 0.0;
  std::size_t n_max_used = 0;
  double tail_bound = 0.0;
};

/// log2(1/(2 cosh^2 r) + Sigma).
double log_negativity(double r, const TruncationPolicy& policy = {});
/// log2(1 + 2 sum |lambda_-|), the spectrum route for the same quantity.
double log_negativity_from_spectrum(double r, const TruncationPolicy& policy = {});
/// Ordinary negativity: sum of |lambda_-|.
double negativity(double r, const TruncationPolicy& policy = {});

struct Entropies {
  double s_a = 1.0;
  double s_d = 0.0;
  double s_ad = 0.0;
};

Entropies entropies(double r, const TruncationPolicy& policy = {});

/// 1 - log2(tanh^2 r)/2 - (1/(2 cosh^2 r)) sum tanh^{2n} r I_n.
double mutual_information(double r, const TruncationPolicy& policy = {});

EntanglementReport report(double r, const TruncationPolicy& policy = {});

struct SweepPoint {
  double r = 0.0;
  std::optional<EntanglementReport> report;
  std::string error_kind;
  std::string error_message;
};

/// One entry per grid value, in input order. Failures are recorded on the
/// point, not thrown. Up to `threads` workers evaluate points concurrently.
std::vector<SweepPoint> sweep(const std::vector<double>& r_grid, const TruncationPolicy& policy = {},
                              unsigned threads = 1);

/// r for each lifetime T at fixed diamond frequency omega: omega_hat = omega T / 2.
std::vector<double> r_from_lifetimes(const std::vector<double>& lifetimes, double omega);

/// Largest r accepted by the measures.
inline constexpr double kMaxR = 100.0;

}  // namespace diamond::entanglement
