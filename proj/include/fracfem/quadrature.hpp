#ifndef FRACFEM_QUADRATURE_HPP
#define FRACFEM_QUADRATURE_HPP

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "fracfem/mesh.hpp"

namespace fracfem {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;
};

/// Nodes and weights by Newton iteration on the Legendre polynomial.
GaussRule gauss_legendre(int n);

/// Rule mapped to [lo, hi].
void map_gauss(const GaussRule& rule, double lo, double hi,
               std::vector<double>& points, std::vector<double>& weights);

/// Two-panel rule on [lo, hi] with a power clustering map toward both
/// endpoints (x = lo + c u^power on the left half and mirrored on the right).
/// Integrands with algebraic endpoint behavior |x - end|^beta, beta > 0,
/// become smooth in the mapped variable, restoring fast Gauss convergence.
/// Appends 2n points for an n-point base rule.
void map_gauss_endpoint(const GaussRule& rule, double lo, double hi,
                        std::vector<double>& points, std::vector<double>& weights,
                        int power = 4);

/// Degree-5 symmetric 7-point triangle rule; weights sum to 1 (multiply by area).
struct TriangleRule {
  std::array<std::array<double, 3>, 7> barycentric;
  std::array<double, 7> weights;
};
const TriangleRule& triangle_rule_degree5();

/// All quadrature points of the degree-5 rule over every triangle of a mesh,
/// with physical weights.
struct MeshQuadrature {
  std::vector<Eigen::Vector2d> points;
  std::vector<double> weights;
};
MeshQuadrature mesh_quadrature(const Mesh& mesh);

/// Integral of f over the mesh with the degree-5 triangle rule.
double integrate(const Mesh& mesh, const std::function<double(double, double)>& f);

/// Adaptive Gauss(7)-Kronrod(15) quadrature by bisection.
/// Throws std::runtime_error when the refinement budget is exhausted.
double adaptive_gk(const std::function<double(double)>& f, double lo, double hi,
                   double rel_tol, double abs_tol, int max_depth = 30);

}  // namespace fracfem

#endif
