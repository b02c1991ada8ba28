#ifndef FRACFEM_NORMS_HPP
#define FRACFEM_NORMS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "fracfem/manufactured.hpp"
#include "fracfem/solver.hpp"

namespace fracfem {

/// L2 distance between two evaluable fields, degree-5 triangle quadrature.
double l2_error(const Mesh& mesh, const Field& field_h, const Field& exact);

/// Energy-norm error ( ||e||_L2^2 + |Lambda(e,e)| )^{1/2}, e = exact - field_h,
/// with closed-form one-sided derivatives for the exact separable-bubble part
/// and the piecewise-linear closed form for the discrete part.
double energy_error(const Mesh& mesh, const DiscreteField& field_h,
                    const SeparableBubbleField& exact, const FracOrder& order,
                    double kappa1, double kappa2, const QuadratureSpec& quad = {});

/// Diagnostic surrogate sqrt(d^T A d), d = coefficients of Pi_h(exact) - field_h.
double energy_error_surrogate(const Mesh& mesh, const DiscreteField& field_h,
                              const Field& exact, const Eigen::MatrixXd& A);

/// Nodal interpolant Pi_h with zero boundary values.
DiscreteField interpolate_nodal(const Mesh& mesh, const Field& exact);

/// log2(e1/e2) / log2(h1/h2).
double convergence_order(double e1, double e2, double h1, double h2);

struct ConvergenceRow {
  double h;
  double err_q = 0.0, order_q = 0.0;
  double err_p = 0.0, order_p = 0.0;
  double err_u = 0.0, order_u = 0.0;
  bool has_order = false;
  double wall_seconds = 0.0;
};

struct ConvergenceReport {
  double alpha = 0.0, gamma = 0.0, kappa1 = 0.0, kappa2 = 0.0;
  QuadratureSpec quad;
  std::vector<int> mesh_sizes;
  std::vector<ConvergenceRow> rows;

  /// Header: h,err_q_L2,order_q,err_p_eng,order_p,err_u_eng,order_u
  void write_csv(std::ostream& out) const;
  void write_csv_file(const std::string& path) const;
};

}  // namespace fracfem

#endif
