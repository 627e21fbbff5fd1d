#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <vector>

#include "diamond/checks.hpp"
#include "diamond/entanglement.hpp"
#include "diamond/errors.hpp"
#include "doctest.h"

using namespace diamond;
using namespace diamond::entanglement;
using states::FockTruncation;

namespace {

constexpr std::size_t kOracleBlocks = 400;

Eigen::VectorXd eigs(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

double bits(const Eigen::VectorXd& p) {
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s -= v * std::log2(v);
  return s;
}

struct DenseMeasures {
  double neg_log, negativity, s_a, s_d, s_ad;
};

// Everything from the dense matrix: eigenvalues, partial traces and the
// index-swapped partial transpose.
DenseMeasures dense_measures(double r) {
  const auto s = states::build_rho_ad(r, FockTruncation{kOracleBlocks, 0.0});
  const Eigen::MatrixXd rho = s.dense();
  const Eigen::VectorXd pt = eigs(checks::dense_partial_transpose(rho, kOracleBlocks));
  const double norm1 = pt.cwiseAbs().sum();
  return {std::log2(norm1), 0.5 * (norm1 - pt.sum()), bits(eigs(checks::trace_out_dave(rho, kOracleBlocks))),
          bits(eigs(checks::trace_out_alice(rho, kOracleBlocks))), bits(eigs(rho))};
}

}  // namespace

TEST_CASE("closed forms against the dense oracle") {
  for (double r : {0.05, 0.3, 0.7, 1.2, 1.8}) {
    CAPTURE(r);
    const auto d = dense_measures(r);
    CHECK(log_negativity(r) == doctest::Approx(d.neg_log).epsilon(1e-10));
    CHECK(negativity(r) == doctest::Approx(d.negativity).epsilon(1e-10));
    const auto e = entropies(r);
    CHECK(std::fabs(e.s_a - d.s_a) < 1e-10);
    CHECK(std::fabs(e.s_d - d.s_d) < 1e-10);
    CHECK(std::fabs(e.s_ad - d.s_ad) < 1e-10);
    CHECK(std::fabs(mutual_information(r) - (d.s_a + d.s_d - d.s_ad)) < 1e-10);
  }
}

TEST_CASE("the two log-negativity routes agree") {
  for (double r : {0.0, 1e-6, 0.01, 0.5, 1.0, 3.0, 5.0, 8.0}) {
    CAPTURE(r);
    CHECK(std::fabs(log_negativity(r) - log_negativity_from_spectrum(r)) < 1e-12);
  }
}

TEST_CASE("closed-form PT spectrum against a dense state with one extra block") {
  for (double r : {0.2, 1.0, 2.5}) {
    const std::size_t n = 40;
    const auto closed = ppt_spectrum_closed_form(r, TruncationPolicy::fixed(n));
    CHECK(closed.pairs.size() == n);
    CHECK(closed.values().size() == 2 * n + 1);
    auto cv = closed.values();
    std::sort(cv.begin(), cv.end());
    const auto oracle = ppt_spectrum_oracle(states::partial_transpose(states::build_rho_ad(r, FockTruncation{n + 1, 0.0})));
    const auto m = checks::match_sorted(cv, oracle);
    CHECK(m.max_error < 1e-14);
    CHECK(m.unmatched == 3);
    for (const auto& [plus, minus] : closed.pairs) {
      CHECK(plus > 0.0);
      CHECK(minus < 0.0);
    }
  }
}

TEST_CASE("vacuum limit") {
  CHECK(log_negativity(0.0) == 1.0);
  CHECK(log_negativity_from_spectrum(0.0) == 1.0);
  CHECK(negativity(0.0) == 0.5);
  const auto e = entropies(0.0);
  CHECK(e.s_a == 1.0);
  CHECK(e.s_d == 1.0);
  CHECK(e.s_ad == 0.0);
  CHECK(mutual_information(0.0) == 2.0);
  // The r -> 0 limit is continuous.
  CHECK(log_negativity(1e-7) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mutual_information(1e-7) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("monotone decay and large-r behaviour") {
  double prev_n = 2.0, prev_i = 3.0;
  for (int i = 0; i <= 60; ++i) {
    const double r = 0.25 * i;
    const double n = log_negativity(r);
    const double mi = mutual_information(r);
    CHECK(n <= prev_n + 1e-15);
    CHECK(mi <= prev_i + 1e-12);
    CHECK(mi >= 1.0 - 1e-12);
    prev_n = n;
    prev_i = mi;
  }
  // Past the block cap the Euler-Maclaurin tail takes over.
  const auto rep = report(12.0);
  CHECK(rep.n_max_used == states::kMaxBlocks);
  CHECK(rep.tail_bound < 1e-9);
  CHECK(std::fabs(rep.neg_log) < 1e-9);
  CHECK(rep.mutual_info == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(log_negativity(100.5), DomainCap);
  CHECK_THROWS_AS(log_negativity(-0.1), InvalidArgument);
}

TEST_CASE("report is consistent with the individual measures") {
  const double r = 0.9;
  const auto rep = report(r);
  CHECK(rep.r == r);
  CHECK(rep.neg_log == log_negativity(r));
  CHECK(rep.negativity == negativity(r));
  CHECK(rep.mutual_info == mutual_information(r));
  const auto e = entropies(r);
  CHECK(rep.s_d == e.s_d);
  CHECK(rep.s_ad == e.s_ad);
  CHECK(std::fabs(rep.mutual_info - (rep.s_a + rep.s_d - rep.s_ad)) < 1e-9);
  CHECK(rep.n_max_used == states::choose_truncation(r, {}).n_max);
  CHECK(rep.tail_bound < states::kDefaultTailTolerance);
}

TEST_CASE("sweep keeps input order, is thread-count independent, and records failures") {
  std::vector<double> grid;
  for (int i = 0; i < 40; ++i) grid.push_back(0.13 * ((i * 17) % 40));
  grid.push_back(150.0);
  const auto one = sweep(grid, {}, 1);
  const auto four = sweep(grid, {}, 4);
  REQUIRE(one.size() == grid.size());
  REQUIRE(four.size() == grid.size());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    CHECK(one[i].r == grid[i]);
    REQUIRE(one[i].report.has_value());
    REQUIRE(four[i].report.has_value());
    CHECK(one[i].report->neg_log == four[i].report->neg_log);
    CHECK(one[i].report->mutual_info == four[i].report->mutual_info);
    CHECK(one[i].report->neg_log == log_negativity(grid[i]));
  }
  CHECK_FALSE(one.back().report.has_value());
  CHECK(one.back().error_kind == "DomainCap");
  CHECK_FALSE(one.back().error_message.empty());
}

TEST_CASE("lifetime reparametrization") {
  const double omega = 0.6;
  const auto r = r_from_lifetimes({0.5, 2.0, 10.0, 0.0, -1.0}, omega);
  REQUIRE(r.size() == 5);
  for (std::size_t i = 0; i < 3; ++i) {
    const double T = std::vector<double>{0.5, 2.0, 10.0}[i];
    CHECK(std::tanh(r[i]) == doctest::Approx(std::exp(-0.25 * std::numbers::pi * omega * T)).epsilon(1e-13));
  }
  CHECK(r[0] > r[1]);
  CHECK(r[1] > r[2]);
  CHECK(std::isnan(r[3]));
  CHECK(std::isnan(r[4]));
  CHECK_THROWS_AS(r_from_lifetimes({1.0}, 0.0), InvalidArgument);
}
