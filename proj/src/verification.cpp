#include "fracfem/verification.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "fracfem/manufactured.hpp"
#include "fracfem/norms.hpp"
#include "fracfem/ocp.hpp"
#include "fracfem/quadrature.hpp"

namespace fracfem {

namespace {

double fd_slope(const PiecewiseLinearTrace& f, double w, double step) {
  return (f(w + step) - f(w - step)) / (2.0 * step);
}

}  // namespace

double rl_left_pwl_quadrature(const PiecewiseLinearTrace& f, double mu, double x,
                              double tol) {
  if (f.empty() || x <= f.support_begin()) return 0.0;
  const double e = 1.0 - mu;
  const double step = 1e-7 * (f.support_end() - f.support_begin());
  const double upper = std::min(x, f.support_end());

  // substitute tau = (x - w)^{1-mu}; kinks of the integrand sit at breakpoints
  std::vector<double> taus;
  taus.push_back(std::pow(x - upper, e));
  for (double t : f.breakpoints())
    if (t >= f.support_begin() && t < upper) taus.push_back(std::pow(x - t, e));
  std::sort(taus.begin(), taus.end());

  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < taus.size(); ++k)
    acc += adaptive_gk(
        [&](double tau) { return fd_slope(f, x - std::pow(tau, 1.0 / e), step); },
        taus[k], taus[k + 1], tol, tol * 1e-3);
  return acc / e / std::tgamma(1.0 - mu);
}

double rl_right_pwl_quadrature(const PiecewiseLinearTrace& f, double mu, double x,
                               double tol) {
  if (f.empty() || x >= f.support_end()) return 0.0;
  const double e = 1.0 - mu;
  const double step = 1e-7 * (f.support_end() - f.support_begin());
  const double lower = std::max(x, f.support_begin());

  std::vector<double> taus;
  taus.push_back(std::pow(lower - x, e));
  for (double t : f.breakpoints())
    if (t > lower && t <= f.support_end()) taus.push_back(std::pow(t - x, e));
  std::sort(taus.begin(), taus.end());

  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < taus.size(); ++k)
    acc += adaptive_gk(
        [&](double tau) { return fd_slope(f, x + std::pow(tau, 1.0 / e), step); },
        taus[k], taus[k + 1], tol, tol * 1e-3);
  return -acc / e / std::tgamma(1.0 - mu);
}

double riesz_bubble_grunwald(double x, double alpha, double a, double b, int n) {
  const double h = (b - a) / n;
  auto f = [&](double t) { return (t <= a || t >= b) ? 0.0 : (t - a) * (b - t); };
  double left = 0.0, right = 0.0;
  double g = 1.0;
  for (int k = 0;; ++k) {
    if (k > 0) g *= 1.0 - (alpha + 1.0) / k;
    double xl = x - (k - 1) * h, xr = x + (k - 1) * h;
    if (xl < a && xr > b) break;
    left += g * f(xl);
    right += g * f(xr);
  }
  return (left + right) * std::pow(h, -alpha) /
         (2.0 * std::cos(0.5 * std::numbers::pi * alpha));
}

double riesz_bubble_grunwald_rich(double x, double alpha, double a, double b, int n) {
  return 2.0 * riesz_bubble_grunwald(x, alpha, a, b, 2 * n) -
         riesz_bubble_grunwald(x, alpha, a, b, n);
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckResult check_gamma() {
  double err = std::abs(std::tgamma(1.5) - std::sqrt(std::numbers::pi) / 2.0);
  return {"fracops.gamma", err < 1e-13, "Gamma(1.5) abs err " + fmt(err)};
}

CheckResult check_fracops_oracle() {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    double t0 = 0.05 + 0.3 * U(rng);
    double t1 = t0 + 0.1 + 0.3 * U(rng);
    double t2 = t1 + 0.1 + 0.3 * U(rng);
    double peak = 0.5 + 1.5 * U(rng);
    PiecewiseLinearTrace hat({t0, t1, t2}, {0.0, peak, 0.0});
    double mu = 0.55 + 0.4 * U(rng);
    double x = U(rng) * 1.2;
    double scale = std::abs(rl_left_pwl(hat, mu, t1)) + 1e-3;
    double dl = std::abs(rl_left_pwl(hat, mu, x) - rl_left_pwl_quadrature(hat, mu, x));
    double dr = std::abs(rl_right_pwl(hat, mu, x) - rl_right_pwl_quadrature(hat, mu, x));
    worst = std::max(worst, std::max(dl, dr) / scale);
  }
  return {"fracops.oracle", worst < 1e-8,
          "50 random hats, worst relative deviation " + fmt(worst)};
}

CheckResult check_riesz_gl() {
  double v = riesz_bubble(0.5, 1.3, 0.0, 1.0);
  double o = riesz_bubble_grunwald_rich(0.5, 1.3, 0.0, 1.0, 4096);
  double rel = std::abs(v - o) / std::abs(o);
  double lim = riesz_bubble(0.5, 1.999, 0.0, 1.0);
  bool pass = rel < 1e-3 && std::abs(lim - 2.0) < 0.04;
  return {"fracops.riesz_gl", pass,
          "GL rel err " + fmt(rel) + ", alpha->2 value " + fmt(lim)};
}

CheckResult check_stiffness_oracle(const QuadratureSpec& quad) {
  double worst = 0.0;
  for (int nx : {2, 3}) {
    Mesh mesh(unit_square(), nx, nx);
    for (double alpha : {1.1, 1.5, 1.9}) {
      FracOrder order(alpha);
      Eigen::MatrixXd A = assemble_stiffness(mesh, order, 1.0, 1.0, quad);
      double scale = A.cwiseAbs().maxCoeff();
      const auto& interior = mesh.interior_nodes();
      for (std::size_t a = 0; a < interior.size(); ++a)
        for (std::size_t b = a; b < interior.size(); ++b) {
          double ref = oracle_stiffness_entry(mesh, interior[a], interior[b], order, 1.0, 1.0);
          double dev = std::abs(A(static_cast<int>(a), static_cast<int>(b)) - ref) / scale;
          worst = std::max(worst, dev);
        }
    }
  }
  return {"stiffness.oracle", worst < 1e-4,
          "nx in {2,3}, alpha in {1.1,1.5,1.9}: worst relative deviation " + fmt(worst)};
}

CheckResult check_spd(const QuadratureSpec& quad) {
  double worst_sym = 0.0, min_eig = std::numeric_limits<double>::max();
  for (double alpha : {1.1, 1.3, 1.5, 1.7, 1.9}) {
    for (int nx : {2, 4, 8}) {
      Mesh mesh(unit_square(), nx, nx);
      Eigen::MatrixXd A = assemble_stiffness(mesh, FracOrder(alpha), 1.0, 1.0, quad);
      worst_sym = std::max(worst_sym,
                           (A - A.transpose()).cwiseAbs().maxCoeff() / A.cwiseAbs().maxCoeff());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (A + A.transpose()));
      min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
    }
  }
  bool pass = worst_sym <= 1e-10 && min_eig > 0.0;
  return {"spd", pass,
          "worst asymmetry " + fmt(worst_sym) + ", smallest eigenvalue " + fmt(min_eig)};
}

CheckResult check_laplacian_limit(const QuadratureSpec& quad) {
  Mesh mesh(unit_square(), 4, 4);
  Eigen::MatrixXd A = assemble_stiffness(mesh, FracOrder(1.999), 1.0, 1.0, quad);
  Eigen::MatrixXd K = assemble_laplacian(mesh, 1.0, 1.0);
  double dev = (A - K).cwiseAbs().maxCoeff() / K.cwiseAbs().maxCoeff();
  return {"laplacian.limit", dev < 0.05, "alpha=1.999 entrywise deviation " + fmt(dev)};
}

CheckResult check_quadrature_convergence(const QuadratureSpec& quad) {
  Mesh mesh(unit_square(), 4, 4);
  FracOrder order(1.5);
  Eigen::MatrixXd A1 = assemble_stiffness(mesh, order, 1.0, 1.0, quad);
  QuadratureSpec fine{2 * quad.n_transverse, 2 * quad.n_axial};
  Eigen::MatrixXd A2 = assemble_stiffness(mesh, order, 1.0, 1.0, fine);
  double dev = (A1 - A2).cwiseAbs().maxCoeff() / A2.cwiseAbs().maxCoeff();
  return {"quadrature.convergence", dev < 1e-5,
          "entry change when doubling quadrature " + fmt(dev)};
}

CheckResult check_kkt(const QuadratureSpec& quad) {
  ManufacturedCase mc(1.3);
  Mesh mesh(mc.domain(), 10, 10);
  OCPSolution sol = fixed_point_solve(mc.problem(), mesh, quad);

  bool feasible = true;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    double q = sol.control(U(rng), U(rng));
    if (q < mc.v1() || q > mc.v2()) feasible = false;
  }

  double worst_kkt = 0.0;
  MeshQuadrature mq = mesh_quadrature(mesh);
  for (const auto& pt : mq.points) {
    double p = sol.p_h.value(pt.x(), pt.y());
    double q = project_control(p, mc.gamma(), mc.v1(), mc.v2());
    double grad = mc.gamma() * q + p;
    if (q > mc.v1() && q < mc.v2())
      worst_kkt = std::max(worst_kkt, std::abs(grad));
    else if (q == mc.v1())
      worst_kkt = std::max(worst_kkt, std::max(0.0, -grad));
    else
      worst_kkt = std::max(worst_kkt, std::max(0.0, grad));
  }

  bool pass = feasible && worst_kkt <= 1e-10 && sol.final_update_norm <= 1e-12;
  return {"kkt", pass,
          "box feasible " + std::string(feasible ? "yes" : "no") + ", worst KKT residual " +
              fmt(worst_kkt) + ", update norm " + fmt(sol.final_update_norm)};
}

}  // namespace

std::vector<CheckResult> run_verification(const QuadratureSpec& quad,
                                          const std::string& only_prefix) {
  std::vector<CheckResult> results;
  auto want = [&](const std::string& name) {
    return only_prefix.empty() || name.rfind(only_prefix, 0) == 0;
  };
  if (want("fracops.gamma")) results.push_back(check_gamma());
  if (want("fracops.oracle")) results.push_back(check_fracops_oracle());
  if (want("fracops.riesz_gl")) results.push_back(check_riesz_gl());
  if (want("stiffness.oracle")) results.push_back(check_stiffness_oracle(quad));
  if (want("spd")) results.push_back(check_spd(quad));
  if (want("laplacian.limit")) results.push_back(check_laplacian_limit(quad));
  if (want("quadrature.convergence")) results.push_back(check_quadrature_convergence(quad));
  if (want("kkt")) results.push_back(check_kkt(quad));
  return results;
}

}  // namespace fracfem
