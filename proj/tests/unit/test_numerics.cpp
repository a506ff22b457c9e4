#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "agewise/distributions.hpp"
#include "agewise/errors.hpp"
#include "agewise/numerics.hpp"
#include "oracles.hpp"

using namespace agewise;

TEST_CASE("integrate: reference integrals") {
  const QuadResult e = integrate([](double x) { return std::exp(-x); }, 0.0, 50.0, 1e-10);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(e.abs_error_estimate >= 0.0);
  CHECK(e.evaluations >= 1);

  const QuadResult one = integrate([](double) { return 1.0; }, 2.0, 5.0, 1e-10);
  CHECK(std::abs(one.value - 3.0) <= 4e-15);

  // mu e^{-T/mu} (T + mu) with mu = 5, T = 10; the [200, inf) remainder is ~1e-15.
  const double expected = 75.0 * std::exp(-2.0);
  const QuadResult xe =
      integrate([](double x) { return x * std::exp(-x / 5.0); }, 10.0, 200.0, 1e-8);
  CHECK(std::abs(xe.value - expected) <= 1e-8);
}

TEST_CASE("integrate: breakpoints isolate derivative kinks") {
  const auto kink = [](double x) { return std::abs(x - 1.0 / 3.0); };
  const double exact = 0.5 * (1.0 / 9.0) + 0.5 * (4.0 / 9.0);
  const std::vector<double> cuts{1.0 / 3.0};
  const QuadResult split = integrate(kink, 0.0, 1.0, 1e-12, cuts);
  CHECK(std::abs(split.value - exact) <= 1e-15);
  // A kink aligned with a panel edge needs a single pass per side.
  CHECK(split.evaluations == 30);
  const QuadResult unsplit = integrate(kink, 0.0, 1.0, 1e-12);
  CHECK(std::abs(unsplit.value - exact) <= 1e-11);
  CHECK(unsplit.evaluations > split.evaluations);
}

TEST_CASE("integrate: argument and convergence errors") {
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0, 1e-10), InvalidArgument);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, 0.0), InvalidArgument);
  const QuadResult empty = integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-10);
  CHECK(empty.value == 0.0);
  CHECK(empty.evaluations >= 1);

  // 1/x is not integrable at 0; the panel budget runs out.
  try {
    integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.best_estimate() > 10.0);
    CHECK(e.abs_error_estimate() > 0.0);
  }
}

TEST_CASE("integrate: additivity and positivity on random intervals") {
  auto g = oracle::rng();
  const std::vector<std::function<double(double)>> fs = {
      [](double x) { return std::exp(-x) * std::cos(x) + 1.0; },
      [](double x) { return x * x * std::exp(-x / 3.0); },
      [](double x) { return 1.0 / (1.0 + x * x); },
      [](double x) { return oracle::survival_3_1(x); },
  };
  for (const auto& f : fs) {
    for (int trial = 0; trial < 25; ++trial) {
      double xs[3] = {oracle::uniform(g, 0.0, 30.0), oracle::uniform(g, 0.0, 30.0),
                      oracle::uniform(g, 0.0, 30.0)};
      std::sort(std::begin(xs), std::end(xs));
      const double tol = 1e-10;
      const double whole = integrate(f, xs[0], xs[2], tol).value;
      const double left = integrate(f, xs[0], xs[1], tol).value;
      const double right = integrate(f, xs[1], xs[2], tol).value;
      CHECK(std::abs(whole - (left + right)) <= 2.0 * tol);
      CHECK(whole >= 0.0);
      CHECK(std::abs(whole - oracle::simpson(f, xs[0], xs[2], 20000)) <= 1e-7);
    }
  }
}

TEST_CASE("integrate_semi_infinite: reference integrals") {
  const QuadResult e =
      integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(e.value - 1.0) <= 1e-8);

  const QuadResult w = integrate_semi_infinite(
      [](double x) { return x * std::exp(-x * x); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(w.value - 0.5) <= 1e-9);

  const std::vector<double> knots{1.0, 28.0};
  const QuadResult mean = integrate_semi_infinite(oracle::survival_3_1, 0.0, 5.0, 1e-10, knots);
  CHECK(std::abs(mean.value - 5.0) <= 1e-6);

  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, 0.0, 0.0, 1e-10),
                  InvalidArgument);
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 0.0; }, 0.0, -1.0, 1e-10),
                  InvalidArgument);
}

TEST_CASE("integrate_semi_infinite: shifted start and heavy polynomial factor") {
  // int_a^inf x^3 e^{-x/2} dx = e^{-a/2} (2a^3 + 12a^2 + 48a + 96)
  for (double a : {0.0, 1.5, 7.0, 30.0}) {
    const double exact =
        std::exp(-a / 2.0) * (2.0 * a * a * a + 12.0 * a * a + 48.0 * a + 96.0);
    const QuadResult q = integrate_semi_infinite(
        [](double x) { return x * x * x * std::exp(-x / 2.0); }, a, 2.0, 1e-10);
    CHECK(std::abs(q.value - exact) <= 1e-8 * std::max(1.0, exact));
  }
}

TEST_CASE("find_root: reference roots") {
  CHECK(find_root([](double x) { return (55.0 - x) / 9.0 - 5.0; }, {1.0, 28.0}, 1e-10) ==
        doctest::Approx(10.0).epsilon(1e-9));
  CHECK(find_root([](double x) { return x - 1.0; }, {0.0, 2.0}, 1e-10) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(find_root([](double x) { return (7.0 - x) / 2.0 - 2.0; }, {1.0, 3.0}, 1e-10) ==
        doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("find_root: errors and bracket containment") {
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, {-1.0, 1.0}, 1e-10),
                  NoSignChange);
  CHECK_THROWS_AS(find_root([](double x) { return x; }, {1.0, -1.0}, 1e-10), InvalidArgument);

  auto g = oracle::rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const double root = oracle::uniform(g, -5.0, 5.0);
    const double lo = root - oracle::uniform(g, 0.0, 3.0);
    const double hi = root + oracle::uniform(g, 1e-3, 3.0);
    const double power = oracle::uniform(g, 0.5, 3.0);
    const auto f = [=](double x) {
      const double d = x - root;
      return std::copysign(std::pow(std::abs(d), power), d);
    };
    const double x = find_root(f, {lo, hi}, 1e-12);
    CHECK(x >= lo);
    CHECK(x <= hi);
    CHECK((std::abs(f(x)) <= 1e-12 || std::abs(x - root) <= 1e-10));
  }
}

TEST_CASE("scan_sign_pattern: reference patterns") {
  const RealFn mrl33_gap = [](double x) { return oracle::mrl_3_3(x) - 2.0; };
  const SignPattern above = scan_sign_pattern(mrl33_gap, 0.0, 20.0, 4096, 1e-9);
  CHECK(above.signature() == "+");
  CHECK(above.crossings.empty());

  const SignPattern zero = scan_sign_pattern([](double) { return 0.0; }, -3.0, 4.0, 64, 1e-9);
  CHECK(zero.signature() == "0");
  CHECK(zero.runs.size() == 1);

  const RealFn mrl31_gap = [](double x) { return oracle::mrl_3_1(x) - 5.0; };
  const SignPattern crossing = scan_sign_pattern(mrl31_gap, 0.0, 60.0, 4096, 1e-9);
  CHECK(crossing.signature() == "+-");
  REQUIRE(crossing.crossings.size() == 1);
  const Bracket b = crossing.crossings.front().bracket;
  CHECK(b.lo <= 10.0);
  CHECK(b.hi >= 10.0);
  CHECK(find_root(mrl31_gap, b, 1e-12) == doctest::Approx(10.0).epsilon(1e-10));
}

TEST_CASE("scan_sign_pattern: plateaus and negation symmetry") {
  // + then a zero plateau then -: the plateau is absorbed, the crossing is non-strict.
  const RealFn plateau = [](double x) { return x < 1.0 ? 1.0 - x : (x < 2.0 ? 0.0 : 2.0 - x); };
  const SignPattern p = scan_sign_pattern(plateau, 0.0, 3.0, 301, 1e-9);
  CHECK(p.signature() == "+-");
  REQUIRE(p.crossings.size() == 1);
  CHECK_FALSE(p.crossings.front().strict);

  CHECK_THROWS_AS(scan_sign_pattern(plateau, 0.0, 1.0, 1, 1e-9), InvalidArgument);

  auto g = oracle::rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double c1 = oracle::uniform(g, -2.0, 2.0);
    const double c2 = oracle::uniform(g, -2.0, 2.0);
    const double c3 = oracle::uniform(g, -2.0, 2.0);
    const RealFn f = [=](double x) { return c1 + c2 * x + c3 * x * x; };
    const RealFn neg = [=](double x) { return -f(x); };
    const SignPattern fp = scan_sign_pattern(f, -2.0, 2.0, 257, 1e-9);
    const SignPattern np = scan_sign_pattern(neg, -2.0, 2.0, 257, 1e-9);
    std::string flipped = fp.signature();
    for (char& c : flipped) c = c == '+' ? '-' : (c == '-' ? '+' : c);
    CHECK(np.signature() == flipped);
    REQUIRE(np.crossings.size() == fp.crossings.size());
    for (std::size_t k = 0; k < fp.crossings.size(); ++k) {
      CHECK(np.crossings[k].bracket.lo == fp.crossings[k].bracket.lo);
      CHECK(np.crossings[k].bracket.hi == fp.crossings[k].bracket.hi);
    }
  }
}

TEST_CASE("gamma_fn: reference values and errors") {
  CHECK(gamma_fn(3.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gamma_fn(1.5) == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK_THROWS_AS(gamma_fn(0.0), InvalidArgument);
  CHECK_THROWS_AS(gamma_fn(-1.5), InvalidArgument);
}

TEST_CASE("gamma_fn: relative accuracy on (0, 50] against the C library") {
  auto g = oracle::rng(3);
  double worst = 0.0;
  for (int i = 0; i < 5000; ++i) {
    const double x = i < 4000 ? oracle::uniform(g, 1e-6, 50.0) : oracle::uniform(g, 1e-6, 1.0);
    worst = std::max(worst, std::abs(gamma_fn(x) / std::tgamma(x) - 1.0));
  }
  CHECK(worst <= 1e-12);
  CHECK(std::abs(gamma_fn(50.0) / std::tgamma(50.0) - 1.0) <= 1e-12);
}

TEST_CASE("gamma_fn: recurrence Gamma(x+1) = x Gamma(x)") {
  auto g = oracle::rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = oracle::uniform(g, 0.5, 20.0);
    CHECK(std::abs(gamma_fn(x + 1.0) / (x * gamma_fn(x)) - 1.0) <= 1e-11);
  }
}
