#ifndef FRACFEM_FRACOPS_HPP
#define FRACFEM_FRACOPS_HPP

#include "fracfem/mesh.hpp"

namespace fracfem {

/// Fractional order of the governing operator: alpha in (1,2),
/// mu = alpha/2 is the order appearing in the split bilinear form.
struct FracOrder {
  explicit FracOrder(double alpha);
  double alpha;
  double mu() const { return 0.5 * alpha; }
  /// 1/(2 cos(pi alpha / 2)); strictly negative on (1,2).
  double cos_factor() const;
};

/// Left Riemann-Liouville derivative of order mu in (0,1) of a piecewise
/// linear function vanishing at its left support end. Exact:
///   (1/Gamma(2-mu)) sum_k s_k [ (x-t_k)_+^{1-mu} - (x-t_{k+1})_+^{1-mu} ].
double rl_left_pwl(const PiecewiseLinearTrace& trace, double mu, double x);
double rl_left_pwl(const PiecewiseLinearTrace& trace, double mu, double x,
                   double left_endpoint);

/// Mirror of rl_left_pwl with (omega - x)_+ kernels; the trace must vanish at
/// its right support end.
double rl_right_pwl(const PiecewiseLinearTrace& trace, double mu, double x);
double rl_right_pwl(const PiecewiseLinearTrace& trace, double mu, double x,
                    double right_endpoint);

/// Left RL derivative of (x-a)^p: Gamma(p+1)/Gamma(p+1-mu) (x-a)^{p-mu}.
double rl_left_monomial(int p, double mu, double x, double a);
/// Right RL derivative of (b-x)^p.
double rl_right_monomial(int p, double mu, double x, double b);

/// Left/right RL derivatives of the bubble w(t) = (t-a)(b-t), order mu in (0,2).
double rl_left_bubble(double x, double mu, double a, double b);
double rl_right_bubble(double x, double mu, double a, double b);

/// Spatial fractional operator applied to the bubble w(x) = (x-a)(b-x), in the
/// sign convention of the coercive bilinear form: the alpha -> 2 limit is
/// -w'' = 2. Equals (1/(2 cos(pi alpha/2))) [L^alpha w + R^alpha w].
double riesz_bubble(double x, double alpha, double a, double b);

}  // namespace fracfem

#endif
