#pragma once

// The embedded invariant suite shared by `diamond selftest` and the
// acceptance binary, plus the brute-force oracles it relies on.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "diamond/states.hpp"

namespace diamond::checks {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // deterministic: measured errors only, never timings
  double seconds = 0.0;
};

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Criteria 1..9 in order. Each check catches its own numeric errors and
/// reports them as a failure. The seed drives the random geometry points.
std::vector<CheckResult> run_suite(std::uint64_t seed = kDefaultSeed);
CheckResult run_check(int id, std::uint64_t seed = kDefaultSeed);
inline constexpr int kFirstCheck = 1;
inline constexpr int kLastCheck = 9;

/// "PASS [3] ppt-dense-oracle: max|d|=4.5e-16"; seconds appended when asked.
std::string format_line(const CheckResult& r, bool with_time);

// Oracles.

/// Transposes Alice's index of a dense operator laid out as a * (n_max+1) + d.
Eigen::MatrixXd dense_partial_transpose(const Eigen::MatrixXd& rho, std::size_t n_max);
/// Matrix partial traces of a dense rho_AD.
Eigen::MatrixXd trace_out_dave(const Eigen::MatrixXd& rho, std::size_t n_max);
Eigen::MatrixXd trace_out_alice(const Eigen::MatrixXd& rho, std::size_t n_max);

struct Matching {
  double max_error = 0.0;
  std::size_t unmatched = 0;  // oracle values left over
};

/// Pairs every value of `closed` with a distinct value of `oracle`, both
/// sorted ascending, preserving order, so that the largest pairwise
/// deviation is minimal. Requires closed.size() <= oracle.size().
Matching match_sorted(const std::vector<double>& closed, const std::vector<double>& oracle);

}  // namespace diamond::checks
