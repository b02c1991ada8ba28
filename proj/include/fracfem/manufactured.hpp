#ifndef FRACFEM_MANUFACTURED_HPP
#define FRACFEM_MANUFACTURED_HPP

#include "fracfem/ocp.hpp"

namespace fracfem {

/// Separable product of 1D bubbles, coef * (x-a)(b-x)(y-c)(d-y), with
/// closed-form one-sided fractional derivatives along both axes.
struct SeparableBubbleField {
  double coef = 1.0;
  Domain dom;

  double value(double x, double y) const {
    return coef * (x - dom.a) * (dom.b - x) * (y - dom.c) * (dom.d - y);
  }
  double bubble_x(double x) const { return (x - dom.a) * (dom.b - x); }
  double bubble_y(double y) const { return (y - dom.c) * (dom.d - y); }

  double left_mu_x(double x, double y, double mu) const;
  double right_mu_x(double x, double y, double mu) const;
  double left_mu_y(double x, double y, double mu) const;
  double right_mu_y(double x, double y, double mu) const;
};

/// Exact triple on the unit square with consistent data:
///   u = 10 x(1-x) y(1-y),  p = 5 x(1-x) y(1-y),
///   q = clamp(-p/gamma, [-3, -0.1]),
/// g and u_d built from u, p, q through the governing equations.
class ManufacturedCase {
 public:
  explicit ManufacturedCase(double alpha, double kappa1 = 1.0, double kappa2 = 1.0,
                            double gamma = 1.0);

  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }
  double kappa1() const { return kappa1_; }
  double kappa2() const { return kappa2_; }
  double v1() const { return v1_; }
  double v2() const { return v2_; }
  Domain domain() const { return dom_; }

  double u(double x, double y) const { return exact_u_.value(x, y); }
  double p(double x, double y) const { return exact_p_.value(x, y); }
  double q(double x, double y) const {
    return project_control(p(x, y), gamma_, v1_, v2_);
  }
  double g(double x, double y) const;
  double u_d(double x, double y) const;

  const SeparableBubbleField& exact_u() const { return exact_u_; }
  const SeparableBubbleField& exact_p() const { return exact_p_; }

  OCPProblem problem() const;

 private:
  double alpha_, kappa1_, kappa2_, gamma_;
  double v1_ = -3.0, v2_ = -0.1;
  Domain dom_;
  SeparableBubbleField exact_u_, exact_p_;
};

}  // namespace fracfem

#endif
