#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracfem/fracops.hpp"
#include "fracfem/manufactured.hpp"
#include "fracfem/quadrature.hpp"

using namespace fracfem;

TEST_CASE("exact fields take the advertised values") {
  ManufacturedCase mc(1.3);
  CHECK(mc.u(0.5, 0.5) == doctest::Approx(10.0 * 0.0625).epsilon(1e-14));
  CHECK(mc.p(0.5, 0.5) == doctest::Approx(5.0 * 0.0625).epsilon(1e-14));
  // q = clamp(-p, [-3, -0.1]); p(center) = 0.3125 so q = -0.3125
  CHECK(mc.q(0.5, 0.5) == doctest::Approx(-0.3125).epsilon(1e-14));
  // near the boundary p is tiny, so the clamp hits the upper bound
  CHECK(mc.q(0.01, 0.01) == doctest::Approx(-0.1).epsilon(1e-14));
  // boundary conditions
  for (double t : {0.0, 0.25, 1.0}) {
    CHECK(mc.u(t, 0.0) == 0.0);
    CHECK(mc.u(0.0, t) == 0.0);
    CHECK(mc.p(t, 1.0) == 0.0);
  }
}

TEST_CASE("control is feasible everywhere") {
  ManufacturedCase mc(1.7);
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      double q = mc.q(i / 40.0, j / 40.0);
      CHECK(q >= mc.v1());
      CHECK(q <= mc.v2());
    }
  }
}

TEST_CASE("bubble derivative closed forms match the monomial combination") {
  // (x-a)(b-x) = (a+b)(x-a) - (x-a)^2 - a(b-a)... simpler: check against
  // (b-a) * D^mu (x-a) - D^mu (x-a)^2 on the unit interval.
  SeparableBubbleField f{1.0, unit_square()};
  double mu = 0.65;
  for (double x : {0.2, 0.5, 0.8}) {
    double expect = rl_left_monomial(1, mu, x, 0.0) - rl_left_monomial(2, mu, x, 0.0);
    CHECK(f.left_mu_x(x, 0.5, mu) ==
          doctest::Approx(0.25 * expect).epsilon(1e-12));  // bubble_y(0.5)=0.25
  }
}

TEST_CASE("derivative fields are symmetric under reflection") {
  SeparableBubbleField f{3.0, unit_square()};
  double mu = 0.7;
  for (double x : {0.1, 0.3, 0.45}) {
    CHECK(f.left_mu_x(x, 0.4, mu) ==
          doctest::Approx(f.right_mu_x(1.0 - x, 0.4, mu)).epsilon(1e-12));
    CHECK(f.left_mu_y(0.4, x, mu) ==
          doctest::Approx(f.right_mu_y(0.4, 1.0 - x, mu)).epsilon(1e-12));
  }
}

TEST_CASE("source term closes the state equation at sample points") {
  // g + q must equal the operator applied to u; with the closed-form Riesz
  // bubble this means g = k1*10*Y(y)*R_x + k2*10*X(x)*R_y - q exactly.
  ManufacturedCase mc(1.5, 2.0, 0.5, 1.0);
  for (double x : {0.25, 0.5, 0.75}) {
    for (double y : {0.3, 0.6}) {
      double rx = riesz_bubble(x, 1.5, 0.0, 1.0);
      double ry = riesz_bubble(y, 1.5, 0.0, 1.0);
      double expect = 2.0 * 10.0 * y * (1.0 - y) * rx +
                      0.5 * 10.0 * x * (1.0 - x) * ry - mc.q(x, y);
      CHECK(mc.g(x, y) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("desired state closes the adjoint equation at sample points") {
  ManufacturedCase mc(1.3);
  for (double x : {0.2, 0.5, 0.9}) {
    for (double y : {0.35, 0.7}) {
      double rx = riesz_bubble(x, 1.3, 0.0, 1.0);
      double ry = riesz_bubble(y, 1.3, 0.0, 1.0);
      double expect = mc.u(x, y) - 5.0 * y * (1.0 - y) * rx - 5.0 * x * (1.0 - x) * ry;
      CHECK(mc.u_d(x, y) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("problem() packages the case consistently") {
  ManufacturedCase mc(1.7, 1.0, 1.0, 1.0);
  OCPProblem prob = mc.problem();
  CHECK(prob.order.alpha == doctest::Approx(1.7));
  CHECK(prob.gamma == 1.0);
  CHECK(prob.v1 == -3.0);
  CHECK(prob.v2 == -0.1);
  CHECK(prob.g(0.4, 0.6) == doctest::Approx(mc.g(0.4, 0.6)).epsilon(1e-14));
  CHECK(prob.u_d(0.4, 0.6) == doctest::Approx(mc.u_d(0.4, 0.6)).epsilon(1e-14));
  CHECK_NOTHROW(prob.validate());
}

TEST_CASE("invalid parameters rejected") {
  CHECK_THROWS_AS(ManufacturedCase(2.3), std::invalid_argument);
  CHECK_THROWS_AS(ManufacturedCase(1.3, 1.0, 1.0, 0.0), std::invalid_argument);
}
