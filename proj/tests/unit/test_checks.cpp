#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "diamond/checks.hpp"
#include "diamond/debug.hpp"
#include "diamond/errors.hpp"
#include "doctest.h"

using namespace diamond;
using namespace diamond::checks;

TEST_CASE("order-preserving minimax matching") {
  const auto exact = match_sorted({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
  CHECK(exact.max_error == 0.0);
  CHECK(exact.unmatched == 0);

  // The leftover oracle values are the ones that fit worst.
  const auto skip = match_sorted({-0.5, 0.0, 0.7}, {-0.5, -0.1, 0.0, 0.69, 5.0});
  CHECK(skip.max_error == doctest::Approx(0.01));
  CHECK(skip.unmatched == 2);

  // Greedy nearest-neighbour pairs 1.0 with 1.05 (error 0.05); skipping
  // 1.05 instead does better.
  const auto minimax = match_sorted({1.0, 1.1}, {0.96, 1.05, 1.11});
  CHECK(minimax.max_error == doctest::Approx(0.04));
  CHECK(minimax.unmatched == 1);

  CHECK_THROWS_AS(match_sorted({1.0, 2.0}, {1.0}), InvalidArgument);
}

TEST_CASE("dense helpers") {
  const std::size_t n_max = 2;
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(6, 6);
  // |0,1><1,2| + h.c. and some diagonal weight
  rho(1, 5) = rho(5, 1) = 0.25;
  rho(1, 1) = 0.5;
  rho(5, 5) = 0.5;
  const auto pt = dense_partial_transpose(rho, n_max);
  CHECK(pt(4, 2) == 0.25);  // |1,1><0,2|
  CHECK(pt(2, 4) == 0.25);
  CHECK(pt(1, 5) == 0.0);
  CHECK(pt(1, 1) == 0.5);
  CHECK((dense_partial_transpose(pt, n_max) - rho).norm() == 0.0);

  const auto ra = trace_out_dave(rho, n_max);
  CHECK(ra.rows() == 2);
  CHECK(ra(0, 0) == 0.5);
  CHECK(ra(1, 1) == 0.5);
  CHECK(ra(0, 1) == 0.0);
  const auto rd = trace_out_alice(rho, n_max);
  CHECK(rd.rows() == 3);
  CHECK(rd(1, 1) == 0.5);
  CHECK(rd(2, 2) == 0.5);
  CHECK(rd(1, 2) == 0.0);
  CHECK_THROWS_AS(dense_partial_transpose(rho, 3), InvalidArgument);
}

TEST_CASE("suite outcome without faults") {
  const auto results = run_suite();
  REQUIRE(results.size() == static_cast<std::size_t>(kLastCheck - kFirstCheck + 1));
  for (const auto& r : results) {
    CAPTURE(format_line(r, true));
    if (r.id == 9)
      CHECK_FALSE(r.pass);  // the (1, 1, 1) endpoint is not reached; see README
    else
      CHECK(r.pass);
  }
  const auto again = run_suite();
  for (std::size_t i = 0; i < results.size(); ++i) CHECK(format_line(results[i], false) == format_line(again[i], false));
}

TEST_CASE("each injected fault trips its guard") {
  const std::pair<debug::Fault, int> guards[] = {
      {debug::Fault::LogNegativity, 1},   {debug::Fault::MutualInformation, 2}, {debug::Fault::PptEigenvalues, 3},
      {debug::Fault::BogoliubovClosedForm, 5}, {debug::Fault::Squeezing, 6},     {debug::Fault::GeometryInverse, 7},
      {debug::Fault::DaveWeights, 8},
  };
  for (const auto& [fault, id] : guards) {
    CAPTURE(debug::to_string(fault));
    CHECK(run_check(id).pass);
    {
      debug::ScopedFault scope(fault);
      CHECK_FALSE(run_check(id).pass);
    }
    CHECK(debug::injected() == debug::Fault::None);
  }
}

TEST_CASE("fault names round-trip") {
  for (auto f : debug::all_faults()) CHECK(debug::parse_fault(debug::to_string(f)) == f);
  CHECK(debug::parse_fault("none") == debug::Fault::None);
  CHECK_FALSE(debug::parse_fault("bogus").has_value());
}

TEST_CASE("line format") {
  CheckResult r{4, "demo", true, "x=1", 1.234};
  CHECK(format_line(r, false) == "PASS [4] demo: x=1");
  CHECK(format_line(r, true) == "PASS [4] demo: x=1 (1.23 s)");
  r.pass = false;
  CHECK(format_line(r, false) == "FAIL [4] demo: x=1");
  CHECK_THROWS_AS(run_check(0), InvalidArgument);
}
