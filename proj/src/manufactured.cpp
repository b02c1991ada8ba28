#include "fracfem/manufactured.hpp"

#include "fracfem/fracops.hpp"

namespace fracfem {

double SeparableBubbleField::left_mu_x(double x, double y, double mu) const {
  return coef * bubble_y(y) * rl_left_bubble(x, mu, dom.a, dom.b);
}
double SeparableBubbleField::right_mu_x(double x, double y, double mu) const {
  return coef * bubble_y(y) * rl_right_bubble(x, mu, dom.a, dom.b);
}
double SeparableBubbleField::left_mu_y(double x, double y, double mu) const {
  return coef * bubble_x(x) * rl_left_bubble(y, mu, dom.c, dom.d);
}
double SeparableBubbleField::right_mu_y(double x, double y, double mu) const {
  return coef * bubble_x(x) * rl_right_bubble(y, mu, dom.c, dom.d);
}

ManufacturedCase::ManufacturedCase(double alpha, double kappa1, double kappa2, double gamma)
    : alpha_(alpha), kappa1_(kappa1), kappa2_(kappa2), gamma_(gamma), dom_(unit_square()) {
  FracOrder check(alpha);  // range validation
  (void)check;
  if (!(gamma > 0.0)) throw std::invalid_argument("ManufacturedCase: gamma must be positive");
  exact_u_ = {10.0, dom_};
  exact_p_ = {5.0, dom_};
}

double ManufacturedCase::g(double x, double y) const {
  // state equation applied to the exact u, minus the exact control
  return kappa1_ * 10.0 * exact_u_.bubble_y(y) * riesz_bubble(x, alpha_, dom_.a, dom_.b) +
         kappa2_ * 10.0 * exact_u_.bubble_x(x) * riesz_bubble(y, alpha_, dom_.c, dom_.d) -
         q(x, y);
}

double ManufacturedCase::u_d(double x, double y) const {
  // adjoint equation rearranged for the desired state
  return u(x, y) -
         kappa1_ * 5.0 * exact_p_.bubble_y(y) * riesz_bubble(x, alpha_, dom_.a, dom_.b) -
         kappa2_ * 5.0 * exact_p_.bubble_x(x) * riesz_bubble(y, alpha_, dom_.c, dom_.d);
}

OCPProblem ManufacturedCase::problem() const {
  OCPProblem prob{FracOrder(alpha_), kappa1_, kappa2_, gamma_, v1_, v2_, nullptr, nullptr};
  prob.g = [c = *this](double x, double y) { return c.g(x, y); };
  prob.u_d = [c = *this](double x, double y) { return c.u_d(x, y); };
  return prob;
}

}  // namespace fracfem
