#ifndef FRACFEM_OCP_HPP
#define FRACFEM_OCP_HPP

#include <stdexcept>
#include <vector>

#include "fracfem/solver.hpp"

namespace fracfem {

/// Distributed quadratic optimal control problem with box-constrained control.
struct OCPProblem {
  FracOrder order;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double gamma = 1.0;   // control penalty
  double v1 = -3.0;     // box lower bound
  double v2 = -0.1;     // box upper bound
  Field g;              // source
  Field u_d;            // desired state

  void validate() const;
};

/// Pointwise projection of -p/gamma onto [v1, v2].
inline double project_control(double p_value, double gamma, double v1, double v2) {
  double q = -p_value / gamma;
  return q < v1 ? v1 : (q > v2 ? v2 : q);
}

struct FixedPointOptions {
  double tol = 1e-12;
  int max_iter = 500;
  double relaxation = 1.0;  // theta in (0,1]
  /// Optional constant initial control; defaults to the box midpoint.
  bool has_initial = false;
  double initial_control = 0.0;
};

struct IterationRecord {
  int iter;
  double update_norm;
  double cost;
};

/// Converged triple: discrete state and adjoint plus the implicit control
/// q_h(x,y) = P_K(-p_h(x,y)/gamma). The control is never projected onto the
/// finite element space.
struct OCPSolution {
  DiscreteField u_h;
  DiscreteField p_h;
  double gamma, v1, v2;
  int iterations;
  double final_update_norm;
  std::vector<IterationRecord> log;

  double control(double x, double y) const {
    return project_control(p_h.value(x, y), gamma, v1, v2);
  }
};

/// Raised when the fixed-point loop exceeds max_iter; carries the last update
/// norm (a hint that gamma is small for the undamped iteration).
class FixedPointDivergence : public std::runtime_error {
 public:
  FixedPointDivergence(int iters, double last_norm);
  double last_update_norm;
};

/// Fixed-point iteration on the discrete optimality system. The stiffness
/// matrix is assembled and factorized once; each sweep solves state and
/// adjoint and re-projects the control at quadrature points.
OCPSolution fixed_point_solve(const OCPProblem& problem, const Mesh& mesh,
                              const QuadratureSpec& quad = {},
                              const FixedPointOptions& opts = {});

/// J = 1/2 ||u_h - u_d||^2 + gamma/2 ||q||^2 by triangle quadrature.
double evaluate_cost(const Mesh& mesh, const DiscreteField& u_h, const Field& q,
                     const Field& u_d, double gamma);

}  // namespace fracfem

#endif
