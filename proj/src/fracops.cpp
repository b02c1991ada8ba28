#include "fracfem/fracops.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fracfem {

namespace {

void check_mu01(double mu) {
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("fractional order mu must lie in (0,1)");
}

}  // namespace

FracOrder::FracOrder(double a) : alpha(a) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::invalid_argument("fractional order alpha must lie in (1,2)");
}

double FracOrder::cos_factor() const {
  return 1.0 / (2.0 * std::cos(0.5 * std::numbers::pi * alpha));
}

double rl_left_pwl(const PiecewiseLinearTrace& f, double mu, double x) {
  check_mu01(mu);
  if (f.empty()) return 0.0;
  const auto& t = f.breakpoints();
  if (x <= t.front()) return 0.0;
  const double e = 1.0 - mu;
  double acc = 0.0;
  for (std::size_t k = 0; k < f.segments(); ++k) {
    if (t[k] >= x) break;
    double a1 = std::pow(x - t[k], e);
    double a2 = (x > t[k + 1]) ? std::pow(x - t[k + 1], e) : 0.0;
    acc += f.slope(k) * (a1 - a2);
  }
  return acc / std::tgamma(2.0 - mu);
}

double rl_left_pwl(const PiecewiseLinearTrace& f, double mu, double x,
                   double left_endpoint) {
  if (!f.empty() && left_endpoint > f.support_begin())
    throw std::invalid_argument("rl_left_pwl: left endpoint inside the trace support");
  return rl_left_pwl(f, mu, x);
}

double rl_right_pwl(const PiecewiseLinearTrace& f, double mu, double x) {
  check_mu01(mu);
  if (f.empty()) return 0.0;
  const auto& t = f.breakpoints();
  if (x >= t.back()) return 0.0;
  const double e = 1.0 - mu;
  double acc = 0.0;
  for (std::size_t k = 0; k < f.segments(); ++k) {
    if (t[k + 1] <= x) continue;
    double a1 = std::pow(t[k + 1] - x, e);
    double a2 = (x < t[k]) ? std::pow(t[k] - x, e) : 0.0;
    acc -= f.slope(k) * (a1 - a2);
  }
  return acc / std::tgamma(2.0 - mu);
}

double rl_right_pwl(const PiecewiseLinearTrace& f, double mu, double x,
                    double right_endpoint) {
  if (!f.empty() && right_endpoint < f.support_end())
    throw std::invalid_argument("rl_right_pwl: right endpoint inside the trace support");
  return rl_right_pwl(f, mu, x);
}

double rl_left_monomial(int p, double mu, double x, double a) {
  if (p < 1) throw std::invalid_argument("rl_left_monomial: p must be >= 1");
  if (!(mu > 0.0 && mu < 2.0))
    throw std::invalid_argument("rl_left_monomial: mu must lie in (0,2)");
  if (x < a) throw std::invalid_argument("rl_left_monomial: x < a");
  double q = p + 1.0 - mu;
  if (q <= 0.0) throw std::invalid_argument("rl_left_monomial: p+1-mu at a Gamma pole");
  double power = p - mu;
  double base = x - a;
  if (base == 0.0) return power > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::tgamma(p + 1.0) / std::tgamma(q) * std::pow(base, power);
}

double rl_right_monomial(int p, double mu, double x, double b) {
  if (p < 1) throw std::invalid_argument("rl_right_monomial: p must be >= 1");
  if (!(mu > 0.0 && mu < 2.0))
    throw std::invalid_argument("rl_right_monomial: mu must lie in (0,2)");
  if (x > b) throw std::invalid_argument("rl_right_monomial: x > b");
  double q = p + 1.0 - mu;
  if (q <= 0.0) throw std::invalid_argument("rl_right_monomial: p+1-mu at a Gamma pole");
  double power = p - mu;
  double base = b - x;
  if (base == 0.0) return power > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::tgamma(p + 1.0) / std::tgamma(q) * std::pow(base, power);
}

// w(t) = (t-a)(b-t) = (b-a)(t-a) - (t-a)^2 = (b-a)(b-t) - (b-t)^2
double rl_left_bubble(double x, double mu, double a, double b) {
  return (b - a) * rl_left_monomial(1, mu, x, a) - rl_left_monomial(2, mu, x, a);
}

double rl_right_bubble(double x, double mu, double a, double b) {
  return (b - a) * rl_right_monomial(1, mu, x, b) - rl_right_monomial(2, mu, x, b);
}

double riesz_bubble(double x, double alpha, double a, double b) {
  FracOrder order(alpha);
  if (x < a || x > b) throw std::invalid_argument("riesz_bubble: x outside [a,b]");
  return order.cos_factor() *
         (rl_left_bubble(x, alpha, a, b) + rl_right_bubble(x, alpha, a, b));
}

}  // namespace fracfem
