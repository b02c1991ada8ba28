#ifndef FRACFEM_SOLVER_HPP
#define FRACFEM_SOLVER_HPP

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "fracfem/assembly.hpp"
#include "fracfem/mesh.hpp"

namespace fracfem {

/// P1 function with homogeneous Dirichlet values: coefficients over interior
/// nodes, zero on the boundary.
class DiscreteField {
 public:
  DiscreteField(const Mesh& mesh, Eigen::VectorXd coeffs);
  static DiscreteField zero(const Mesh& mesh);

  const Mesh& mesh() const { return *mesh_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }

  /// Coefficient of a mesh node; boundary nodes are exactly zero.
  double node_value(int node) const;

  /// P1 interpolation at (x, y).
  double value(double x, double y) const;

  /// Piecewise-linear profile along the horizontal line at height y
  /// (breakpoints at mesh lines and diagonal crossings).
  PiecewiseLinearTrace profile_along_x(double y) const;
  PiecewiseLinearTrace profile_along_y(double x) const;

 private:
  const Mesh* mesh_;
  Eigen::VectorXd coeffs_;
};

/// Dense symmetric positive definite direct solver (Cholesky with one step of
/// iterative refinement). Factor once, reuse for all right-hand sides.
class SpdSolver {
 public:
  /// Throws std::runtime_error("matrix not SPD ...") if factorization fails.
  explicit SpdSolver(Eigen::MatrixXd A);
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  const Eigen::MatrixXd& matrix() const { return A_; }

 private:
  Eigen::MatrixXd A_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

inline Eigen::VectorXd solve_spd(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  return SpdSolver(A).solve(b);
}

/// State solve: A u = (g + q, phi_i).
DiscreteField solve_state(const SpdSolver& solver, const Mesh& mesh, const Field& g,
                          const Field& q, const QuadratureSpec& quad = {});

/// Adjoint solve with the same operator: A p = (u_h - u_d, phi_i).
DiscreteField solve_adjoint(const SpdSolver& solver, const Mesh& mesh,
                            const DiscreteField& u_h, const Field& u_d,
                            const QuadratureSpec& quad = {});

}  // namespace fracfem

#endif
