#include "fracfem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracfem {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

void map_gauss(const GaussRule& rule, double lo, double hi,
               std::vector<double>& points, std::vector<double>& weights) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int i = 0; i < rule.points.size(); ++i) {
    points.push_back(mid + half * rule.points[i]);
    weights.push_back(half * rule.weights[i]);
  }
}

void map_gauss_endpoint(const GaussRule& rule, double lo, double hi,
                        std::vector<double>& points, std::vector<double>& weights,
                        int power) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  (void)mid;
  for (int i = 0; i < rule.points.size(); ++i) {
    const double u = 0.5 * (1.0 + rule.points[i]);
    const double wu = 0.5 * rule.weights[i];
    const double up = std::pow(u, power - 1);
    const double x = half * up * u;  // u^power
    const double w = wu * power * half * up;
    points.push_back(lo + x);
    weights.push_back(w);
    points.push_back(hi - x);
    weights.push_back(w);
  }
}

const TriangleRule& triangle_rule_degree5() {
  static const TriangleRule rule = [] {
    TriangleRule r;
    const double a1 = 0.059715871789770, b1 = 0.470142064105115;
    const double a2 = 0.797426985353087, b2 = 0.101286507323456;
    const double w0 = 0.225, w1 = 0.132394152788506, w2 = 0.125939180544827;
    r.barycentric = {{{1.0 / 3, 1.0 / 3, 1.0 / 3},
                      {a1, b1, b1},
                      {b1, a1, b1},
                      {b1, b1, a1},
                      {a2, b2, b2},
                      {b2, a2, b2},
                      {b2, b2, a2}}};
    r.weights = {w0, w1, w1, w1, w2, w2, w2};
    return r;
  }();
  return rule;
}

MeshQuadrature mesh_quadrature(const Mesh& mesh) {
  const TriangleRule& rule = triangle_rule_degree5();
  const double area = mesh.triangle_area();
  MeshQuadrature q;
  q.points.reserve(mesh.triangles().size() * rule.weights.size());
  q.weights.reserve(q.points.capacity());
  for (const auto& tri : mesh.triangles()) {
    Eigen::Vector2d v0 = mesh.node(tri[0]), v1 = mesh.node(tri[1]), v2 = mesh.node(tri[2]);
    for (std::size_t k = 0; k < rule.weights.size(); ++k) {
      const auto& b = rule.barycentric[k];
      q.points.push_back(b[0] * v0 + b[1] * v1 + b[2] * v2);
      q.weights.push_back(rule.weights[k] * area);
    }
  }
  return q;
}

double integrate(const Mesh& mesh, const std::function<double(double, double)>& f) {
  MeshQuadrature q = mesh_quadrature(mesh);
  double acc = 0.0;
  for (std::size_t k = 0; k < q.weights.size(); ++k)
    acc += q.weights[k] * f(q.points[k].x(), q.points[k].y());
  return acc;
}

namespace {

// Kronrod-15 node/weight table (positive half) with embedded Gauss-7.
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

struct GKResult {
  double kronrod;
  double error;
};

GKResult gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double fk[8];
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 8; ++i) {
    double v = (i == 7) ? f(mid)
                        : f(mid - half * kKronrodNodes[i]) + f(mid + half * kKronrodNodes[i]);
    fk[i] = v;
    resk += kKronrodWeights[i] * v;
  }
  // Gauss-7 nodes are Kronrod indices 1, 3, 5, 7
  for (int i = 0; i < 4; ++i) resg += kGaussWeights[i] * fk[2 * i + 1];
  resk *= half;
  resg *= half;
  return {resk, std::abs(resk - resg)};
}

double adaptive_gk_impl(const std::function<double(double)>& f, double lo, double hi,
                        double tol, int depth) {
  GKResult r = gk15(f, lo, hi);
  if (r.error <= tol || hi - lo < 1e-14 * (std::abs(lo) + std::abs(hi) + 1.0)) return r.kronrod;
  if (depth <= 0) throw std::runtime_error("adaptive_gk: refinement budget exceeded");
  const double mid = 0.5 * (lo + hi);
  return adaptive_gk_impl(f, lo, mid, 0.5 * tol, depth - 1) +
         adaptive_gk_impl(f, mid, hi, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_gk(const std::function<double(double)>& f, double lo, double hi,
                   double rel_tol, double abs_tol, int max_depth) {
  if (!(lo < hi)) return 0.0;
  GKResult coarse = gk15(f, lo, hi);
  double tol = std::max(abs_tol, rel_tol * std::abs(coarse.kronrod));
  if (coarse.error <= tol) return coarse.kronrod;
  const double mid = 0.5 * (lo + hi);
  return adaptive_gk_impl(f, lo, mid, 0.5 * tol, max_depth) +
         adaptive_gk_impl(f, mid, hi, 0.5 * tol, max_depth);
}

}  // namespace fracfem
