#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "agewise/convergence.hpp"
#include "agewise/errors.hpp"

using namespace agewise;

TEST_CASE("doublings") {
  CHECK(doublings(1) == std::vector<int>{1});
  CHECK(doublings(8) == std::vector<int>{1, 2, 4, 8});
  CHECK(doublings(10) == std::vector<int>{1, 2, 4, 8});
  CHECK_THROWS_AS(doublings(0), InvalidArgument);
}

TEST_CASE("run_convergence: Weibull shape sequence") {
  const std::vector<double> orders{1.0, 2.0};
  const ConvergenceReport rep = run_convergence(weibull_shape_sequence(doublings(1024)), orders);
  REQUIRE(rep.rows.size() == 11);
  CHECK(rep.limit_mean == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.limit_moments.at(2.0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(rep.limit_verdict.label == AgeingClass::Exponential);

  for (const auto& row : rep.rows) {
    const double k = 1.0 + 1.0 / row.n;
    CHECK(row.mu_n == doctest::Approx(std::tgamma(1.0 + 1.0 / k)).epsilon(1e-9));
    CHECK(row.moment_errors.at(2.0) ==
          doctest::Approx(std::abs(std::tgamma(1.0 + 2.0 / k) - 2.0)).epsilon(1e-6));
  }
  const auto& last = rep.rows.back();
  CHECK(last.n == 1024);
  CHECK(last.moment_errors.at(2.0) < 0.02);
  for (std::size_t i = rep.rows.size() - 5; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].moment_errors.at(2.0) < rep.rows[i - 1].moment_errors.at(2.0));
    CHECK(rep.rows[i].cdf_sup_distance < rep.rows[i - 1].cdf_sup_distance);
  }
}

TEST_CASE("run_convergence: exponential mean sequence") {
  const std::vector<double> orders{2.0};
  const ConvergenceReport rep = run_convergence(exponential_mean_sequence({1, 10, 100}), orders);
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) {
    const double m = 1.0 + 1.0 / row.n;
    CHECK(row.mu_n == doctest::Approx(m).epsilon(1e-9));
    CHECK(row.moment_errors.at(2.0) == doctest::Approx(2.0 * m * m - 2.0).epsilon(1e-7));
    // sup_x |e^{-x/m} - e^{-x}| is attained where the derivatives match.
    const double x = std::log(m) * m / (m - 1.0);
    CHECK(row.cdf_sup_distance <= std::exp(-x / m) - std::exp(-x) + 1e-12);
    CHECK(row.cdf_sup_distance >= 0.99 * (std::exp(-x / m) - std::exp(-x)));
  }
}

TEST_CASE("run_convergence: hypothesis violation names the member") {
  SequenceSpec spec{CustomSeq{{exponential(1.0), catalog("example_3_1")}}, {1, 2}, exponential(1.0)};
  try {
    run_convergence(spec, {2.0});
    FAIL("expected HypothesisViolation");
  } catch (const HypothesisViolation& e) {
    CHECK(std::string(e.what()).find("n=2") != std::string::npos);
    CHECK(std::string(e.what()).find("NWBUE") != std::string::npos);
  }
}

TEST_CASE("run_convergence: argument errors") {
  CHECK_THROWS_AS(run_convergence(weibull_shape_sequence({}), {2.0}), InvalidArgument);
  CHECK_THROWS_AS(run_convergence(weibull_shape_sequence({2, 1}), {2.0}), InvalidArgument);
  CHECK_THROWS_AS(run_convergence(weibull_shape_sequence({0, 1}), {2.0}), InvalidArgument);
  CHECK_THROWS_AS(run_convergence(weibull_shape_sequence({1}), {-1.0}), InvalidArgument);
  SequenceSpec short_custom{CustomSeq{{exponential(1.0)}}, {1, 2}, exponential(1.0)};
  CHECK_THROWS_AS(run_convergence(short_custom, {2.0}), InvalidArgument);
}
