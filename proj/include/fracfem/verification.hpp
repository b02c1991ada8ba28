#ifndef FRACFEM_VERIFICATION_HPP
#define FRACFEM_VERIFICATION_HPP

#include <string>
#include <vector>

#include "fracfem/assembly.hpp"

namespace fracfem {

/// Fractional derivative of a piecewise-linear function by adaptive quadrature
/// of the convolution definition (graded substitution at the singular end,
/// split at breakpoints). Independent of the closed-form path.
double rl_left_pwl_quadrature(const PiecewiseLinearTrace& trace, double mu, double x,
                              double tol = 1e-10);
double rl_right_pwl_quadrature(const PiecewiseLinearTrace& trace, double mu, double x,
                               double tol = 1e-10);

/// Shifted Grunwald-Letnikov approximation of the bubble operator on an n-point
/// grid, same sign convention as riesz_bubble. First order in 1/n.
double riesz_bubble_grunwald(double x, double alpha, double a, double b, int n);

/// Richardson extrapolation of the shifted scheme (n and 2n).
double riesz_bubble_grunwald_rich(double x, double alpha, double a, double b, int n);

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

/// The oracle/invariant suite behind `verify`: closed forms vs quadrature
/// oracles, stiffness vs brute-force entries, SPD structure, the classical
/// Laplacian limit, quadrature convergence, and KKT conditions of a converged
/// solve. `only_prefix` filters checks by name prefix.
std::vector<CheckResult> run_verification(const QuadratureSpec& quad,
                                          const std::string& only_prefix = "");

}  // namespace fracfem

#endif
