#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracfem/fracops.hpp"
#include "fracfem/verification.hpp"

using namespace fracfem;

namespace {
const PiecewiseLinearTrace kHat({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
}

TEST_CASE("gamma function accuracy on the needed range") {
  CHECK(std::tgamma(1.5) == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-13));
  CHECK(std::tgamma(2.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::tgamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("FracOrder validates its range") {
  CHECK_THROWS_AS(FracOrder(1.0), std::invalid_argument);
  CHECK_THROWS_AS(FracOrder(2.0), std::invalid_argument);
  CHECK_THROWS_AS(FracOrder(2.5), std::invalid_argument);
  CHECK(FracOrder(1.3).mu() == doctest::Approx(0.65));
  CHECK(FracOrder(1.3).cos_factor() < 0.0);
}

TEST_CASE("left derivative is causal") {
  CHECK(rl_left_pwl(kHat, 0.65, -0.5) == 0.0);
  CHECK(rl_left_pwl(kHat, 0.65, 0.0) == 0.0);
  CHECK(rl_right_pwl(kHat, 0.65, 1.0) == 0.0);
  CHECK(rl_right_pwl(kHat, 0.65, 1.5) == 0.0);
}

TEST_CASE("invalid order and malformed traces rejected") {
  CHECK_THROWS_AS(rl_left_pwl(kHat, 1.2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(rl_left_pwl(kHat, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseLinearTrace({0.0, 0.5, 0.5}, {0.0, 1.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(rl_left_pwl(kHat, 0.65, 0.5, 0.2), std::invalid_argument);
}

TEST_CASE("hat derivative matches the quadrature oracle") {
  double ref = rl_left_pwl_quadrature(kHat, 0.65, 0.75);
  CHECK(rl_left_pwl(kHat, 0.65, 0.75) == doctest::Approx(ref).epsilon(1e-8));
  ref = rl_right_pwl_quadrature(kHat, 0.65, 0.25);
  CHECK(rl_right_pwl(kHat, 0.65, 0.25) == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("linear ramp: half derivative at x=1 is 2/sqrt(pi)") {
  PiecewiseLinearTrace ramp({0.0, 1.0}, {0.0, 1.0});
  CHECK(rl_left_pwl(ramp, 0.5, 1.0) ==
        doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("symmetric hat: right derivative mirrors the left one") {
  for (double x : {0.1, 0.25, 0.4, 0.6, 0.9}) {
    CHECK(rl_right_pwl(kHat, 0.65, x) ==
          doctest::Approx(rl_left_pwl(kHat, 0.65, 1.0 - x)).epsilon(1e-12));
  }
}

TEST_CASE("reflection property for asymmetric traces") {
  PiecewiseLinearTrace f({0.1, 0.3, 0.8}, {0.0, 1.7, 0.0});
  PiecewiseLinearTrace mirror({0.2, 0.7, 0.9}, {0.0, 1.7, 0.0});  // about 0.5
  for (double x : {0.05, 0.2, 0.45, 0.77, 0.95}) {
    CHECK(rl_right_pwl(f, 0.7, x) ==
          doctest::Approx(rl_left_pwl(mirror, 0.7, 1.0 - x)).epsilon(1e-12));
  }
}

TEST_CASE("linearity in the trace") {
  PiecewiseLinearTrace f({0.0, 0.25, 0.5, 1.0}, {0.0, 0.8, 0.3, 0.0});
  PiecewiseLinearTrace g({0.0, 0.25, 0.5, 1.0}, {0.0, -0.2, 0.9, 0.0});
  PiecewiseLinearTrace sum({0.0, 0.25, 0.5, 1.0}, {0.0, 0.6, 1.2, 0.0});
  for (double x : {0.2, 0.5, 0.85, 1.3}) {
    CHECK(rl_left_pwl(sum, 0.6, x) ==
          doctest::Approx(rl_left_pwl(f, 0.6, x) + rl_left_pwl(g, 0.6, x)).epsilon(1e-12));
  }
}

TEST_CASE("randomized oracle equivalence") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    double t0 = 0.05 + 0.3 * U(rng);
    double t1 = t0 + 0.1 + 0.3 * U(rng);
    double t2 = t1 + 0.1 + 0.3 * U(rng);
    PiecewiseLinearTrace hat({t0, t1, t2}, {0.0, 0.5 + 1.5 * U(rng), 0.0});
    double mu = 0.55 + 0.4 * U(rng);
    double x = 1.2 * U(rng);
    double scale = std::abs(rl_left_pwl(hat, mu, t1)) + 1e-3;
    CHECK(std::abs(rl_left_pwl(hat, mu, x) - rl_left_pwl_quadrature(hat, mu, x)) / scale <
          1e-8);
    CHECK(std::abs(rl_right_pwl(hat, mu, x) - rl_right_pwl_quadrature(hat, mu, x)) / scale <
          1e-8);
  }
}

TEST_CASE("monomial derivatives") {
  CHECK(rl_left_monomial(1, 0.5, 1.0, 0.0) ==
        doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-13));
  CHECK(rl_left_monomial(2, 1.3, 1.0, 0.0) ==
        doctest::Approx(2.0 / std::tgamma(1.7)).epsilon(1e-13));
  CHECK(rl_left_monomial(1, 0.5, 0.0, 0.0) == 0.0);
  CHECK(rl_left_monomial(2, 1.3, 0.0, 0.0) == 0.0);
  CHECK_THROWS_AS(rl_left_monomial(0, 0.5, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("riesz bubble: reflection symmetry about the midpoint") {
  for (double delta : {0.05, 0.1, 0.2, 0.3}) {
    CHECK(riesz_bubble(0.5 + delta, 1.3, 0.0, 1.0) ==
          doctest::Approx(riesz_bubble(0.5 - delta, 1.3, 0.0, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("riesz bubble matches the Grunwald-Letnikov oracle") {
  double v = riesz_bubble(0.5, 1.3, 0.0, 1.0);
  double ref = riesz_bubble_grunwald_rich(0.5, 1.3, 0.0, 1.0, 4096);
  CHECK(v == doctest::Approx(ref).epsilon(1e-3));
  v = riesz_bubble(0.3, 1.7, 0.0, 1.0);
  ref = riesz_bubble_grunwald_rich(0.3, 1.7, 0.0, 1.0, 4096);
  CHECK(v == doctest::Approx(ref).epsilon(1e-3));
}

TEST_CASE("riesz bubble alpha->2 limit is the classical -w''") {
  CHECK(riesz_bubble(0.5, 1.999, 0.0, 1.0) == doctest::Approx(2.0).epsilon(0.02));
  CHECK_THROWS_AS(riesz_bubble(0.5, 2.5, 0.0, 1.0), std::invalid_argument);
}
