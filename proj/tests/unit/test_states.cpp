#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "diamond/checks.hpp"
#include "diamond/errors.hpp"
#include "diamond/states.hpp"
#include "doctest.h"

using namespace diamond;
using namespace diamond::states;

namespace {

// rho_AD traced from the purification (|0>|vac> + |1>|one>)/sqrt2 over the
// exterior mode, one exterior occupation at a time.
Eigen::MatrixXd purification_oracle(double r, std::size_t n_max) {
  const FockTruncation t{n_max, 0.0};
  const auto c = unruh_vacuum_coefficients(r, t);
  const auto o = unruh_one_particle_coefficients(r, t);
  const auto dim = static_cast<Eigen::Index>(2 * (n_max + 1));
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t n = 0; n < n_max; ++n) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v(static_cast<Eigen::Index>(n)) = c[n];
    v(static_cast<Eigen::Index>(n_max + 1 + n + 1)) = o[n];
    rho += 0.5 * v * v.transpose();
  }
  return rho;
}

std::vector<double> sorted_eigs(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("block structure matches the purification") {
  for (double r : {0.0, 0.2, 1.0, 2.5}) {
    for (std::size_t n_max : {1u, 3u, 25u}) {
      const auto s = build_rho_ad(r, FockTruncation{n_max, truncation_tail(r, n_max)});
      CHECK(s.blocks().size() == n_max);
      CHECK(s.dim() == 2 * (n_max + 1));
      CHECK((s.dense() - purification_oracle(r, n_max)).cwiseAbs().maxCoeff() < 1e-16);
    }
  }
}

TEST_CASE("trace deficit is covered by the tail bound") {
  for (double r : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    for (std::size_t n_max : {1u, 5u, 40u, 400u}) {
      const double tail = truncation_tail(r, n_max);
      const auto s = build_rho_ad(r, FockTruncation{n_max, tail});
      CHECK(1.0 - s.trace() >= -1e-15);
      CHECK(1.0 - s.trace() <= tail + 1e-15);
    }
  }
  CHECK(truncation_tail(0.0, 1) == 0.0);
  CHECK(build_rho_ad(0.0, FockTruncation{1, 0.0}).trace() == doctest::Approx(1.0));
}

TEST_CASE("rho_AD eigenvalues in closed form") {
  const double r = 0.8;
  const std::size_t n_max = 30;
  const auto s = build_rho_ad(r, FockTruncation{n_max, 0.0});
  std::vector<double> want(2 * (n_max + 1) - n_max, 0.0);
  for (std::size_t n = 0; n < n_max; ++n) want.push_back(rho_ad_eigenvalue(r, n));
  std::sort(want.begin(), want.end());
  const auto got = sorted_eigs(s.dense());
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::fabs(got[i] - want[i]) < 1e-15);
}

TEST_CASE("structured partial transpose equals the dense index swap") {
  for (double r : {0.05, 0.7, 2.0}) {
    for (std::size_t n_max : {1u, 2u, 17u}) {
      const auto s = build_rho_ad(r, FockTruncation{n_max, 0.0});
      const auto pt = partial_transpose(s);
      CHECK(pt.representation() == Representation::PartialTranspose);
      const Eigen::MatrixXd want = checks::dense_partial_transpose(s.dense(), n_max);
      CHECK((pt.dense() - want).cwiseAbs().maxCoeff() < 1e-16);
      CHECK(pt.trace() == doctest::Approx(s.trace()).epsilon(1e-15));
    }
  }
  const auto s = build_rho_ad(0.3, FockTruncation{4, 0.0});
  CHECK_THROWS_AS(partial_transpose(partial_transpose(s)), InvalidArgument);
}

TEST_CASE("reduced states match the matrix partial traces") {
  const double r = 1.1;
  const std::size_t n_max = 60;
  const auto s = build_rho_ad(r, FockTruncation{n_max, truncation_tail(r, n_max)});
  const Eigen::MatrixXd rho = s.dense();

  const auto d = reduce_to_dave(s);
  const Eigen::MatrixXd rd = checks::trace_out_alice(rho, n_max);
  CHECK(d.kind == Party::Dave);
  REQUIRE(d.weights.size() == n_max + 1);
  CHECK((rd - Eigen::MatrixXd(rd.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
  for (std::size_t n = 0; n <= n_max; ++n) CHECK(std::fabs(d.weights[n] - rd(n, n)) < 1e-16);

  const auto a = reduce_to_alice(s);
  const Eigen::MatrixXd ra = checks::trace_out_dave(rho, n_max);
  CHECK(std::fabs(a.weights[0] - ra(0, 0)) < 1e-15);
  CHECK(std::fabs(a.weights[1] - ra(1, 1)) < 1e-15);
  // Alice is maximally mixed up to the truncation.
  CHECK(std::fabs(a.weights[0] - 0.5) <= a.tail_bound);
  CHECK(std::fabs(a.weights[1] - 0.5) <= a.tail_bound);
  // The off-diagonal <0|rho_A|1> vanishes: Dave's occupations differ by one.
  CHECK(ra(0, 1) == 0.0);
}

TEST_CASE("Dave weights in closed form") {
  for (double r : {0.01, 0.4, 1.5, 3.0}) {
    const std::size_t n_max = 200;
    const auto d = reduce_to_dave(build_rho_ad(r, FockTruncation{n_max, 0.0}));
    for (std::size_t n = 0; n < n_max; ++n) CHECK(std::fabs(d.weights[n] - dave_weight(r, n)) < 1e-15);
    double total = 0.0;
    for (std::size_t n = 0; n < 20000; ++n) total += dave_weight(r, n);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(dave_weight(0.0, 0) == 0.5);
  CHECK(dave_weight(0.0, 1) == 0.5);
  CHECK(dave_weight(0.0, 2) == 0.0);
  // Continuity at r -> 0.
  CHECK(dave_weight(1e-9, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("automatic and fixed truncation") {
  const auto t = choose_truncation(1.0, TruncationPolicy::automatic());
  CHECK(t.tail_bound < kDefaultTailTolerance);
  CHECK(truncation_tail(1.0, t.n_max - 1) >= kDefaultTailTolerance);
  CHECK(t.tail_bound == truncation_tail(1.0, t.n_max));

  const auto loose = choose_truncation(1.0, TruncationPolicy::automatic(1e-3));
  CHECK(loose.n_max < t.n_max);
  CHECK(loose.tail_bound < 1e-3);

  const auto f = choose_truncation(1.0, TruncationPolicy::fixed(5));
  CHECK(f.n_max == 5);
  CHECK(f.tail_bound > 1e-3);  // reported, not enforced
  CHECK_THROWS_AS(choose_truncation(1.0, TruncationPolicy::fixed(5, 1e-6)), TruncationTooSmall);
  CHECK_THROWS_AS(choose_truncation(1.0, TruncationPolicy::fixed(0)), InvalidArgument);

  // Beyond the block cap the automatic policy refuses; the clipped variant reports.
  CHECK_THROWS_AS(choose_truncation(12.0, TruncationPolicy::automatic()), TruncationTooSmall);
  const auto clipped = choose_truncation_clipped(12.0, TruncationPolicy::automatic());
  CHECK(clipped.n_max == kMaxBlocks);
  CHECK(clipped.tail_bound > kDefaultTailTolerance);

  CHECK(choose_truncation(0.0, TruncationPolicy::automatic()).n_max == 1);
  CHECK_THROWS_AS(choose_truncation(-1.0, TruncationPolicy::automatic()), InvalidArgument);
  CHECK_THROWS_AS(choose_truncation(1.0, TruncationPolicy::automatic(0.0)), InvalidArgument);
}

TEST_CASE("dense form is capped") {
  const auto big = build_rho_ad(0.5, FockTruncation{kMaxDenseBlocks + 1, 0.0});
  CHECK_THROWS_AS(big.dense(), InvalidArgument);
  CHECK_THROWS_AS(build_rho_ad(0.5, FockTruncation{0, 0.0}), InvalidArgument);
}
