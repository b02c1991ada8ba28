#ifndef FRACFEM_ASSEMBLY_HPP
#define FRACFEM_ASSEMBLY_HPP

#include <Eigen/Core>

#include <functional>
#include <string>

#include "fracfem/fracops.hpp"
#include "fracfem/mesh.hpp"
#include "fracfem/quadrature.hpp"

namespace fracfem {

using Field = std::function<double(double, double)>;

struct QuadratureSpec {
  // Base Gauss orders; each strip (transverse) and each subinterval (axial)
  // is integrated with a two-panel endpoint-clustered rule of 2n points built
  // from the n-point base rule, which resolves the |.|^{1-mu} breakpoint
  // behavior of the fractional derivatives.
  int n_transverse = 4;  // base points per mesh strip, transverse direction
  int n_axial = 6;       // base points per subinterval along the derivative axis
};

/// Dense fractional stiffness matrix over interior nodes:
///   A_ij = kappa1/(2 cos(pi alpha/2)) [ (L^mu phi_j, R^mu phi_i) + (R^mu phi_j, L^mu phi_i) ]
///        + the same pairing with kappa2 in the y direction, mu = alpha/2.
/// The x-term is integrated strip by strip: Gauss points in y, closed-form
/// trace derivatives, Gauss quadrature in x split at mesh lines and trace
/// breakpoints. Symmetric positive definite.
Eigen::MatrixXd assemble_stiffness(const Mesh& mesh, const FracOrder& order,
                                   double kappa1, double kappa2,
                                   const QuadratureSpec& quad = {});

/// Exact P1 mass matrix over interior nodes.
Eigen::MatrixXd assemble_mass(const Mesh& mesh);

/// Mass matrix over all nodes, boundary included (test/diagnostic variant).
Eigen::MatrixXd assemble_mass_full(const Mesh& mesh);

/// Load vector b_i = int f phi_i over interior nodes, degree-5 triangle rule.
Eigen::VectorXd assemble_load(const Mesh& mesh, const Field& f,
                              const QuadratureSpec& quad = {});

/// Load vector from values of the integrand at mesh_quadrature points
/// (same ordering as mesh_quadrature).
Eigen::VectorXd assemble_load_values(const Mesh& mesh, const MeshQuadrature& mq,
                                     const Eigen::VectorXd& values);

/// Classical P1 Laplacian stiffness kappa1 (u_x, v_x) + kappa2 (u_y, v_y) over
/// interior nodes; the alpha -> 2 reference for the fractional assembly.
Eigen::MatrixXd assemble_laplacian(const Mesh& mesh, double kappa1, double kappa2);

/// Independent recomputation of one stiffness entry by adaptive quadrature of
/// the defining convolutions (no closed forms). Tiny meshes only; throws when
/// the quadrature budget is exceeded.
double oracle_stiffness_entry(const Mesh& mesh, int node_i, int node_j,
                              const FracOrder& order, double kappa1, double kappa2,
                              double tol = 1e-6);

/// Debug dump: row-major CSV, full-precision scientific notation.
void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path);

}  // namespace fracfem

#endif
