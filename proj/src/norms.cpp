#include "fracfem/norms.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "fracfem/fracops.hpp"
#include "fracfem/quadrature.hpp"

namespace fracfem {

double l2_error(const Mesh& mesh, const Field& field_h, const Field& exact) {
  double acc = integrate(mesh, [&](double x, double y) {
    double e = field_h(x, y) - exact(x, y);
    return e * e;
  });
  return std::sqrt(acc);
}

namespace {

// Lambda(e,e) contribution of one direction, integrated strip by strip with
// closed-form derivatives of both the exact and the discrete part.
double energy_axis(const Mesh& mesh, const DiscreteField& field_h,
                   const SeparableBubbleField& exact, double mu, double coeff,
                   const GaussRule& gt, const GaussRule& ga, bool axis_x) {
  const int nstrips = axis_x ? mesh.ny() : mesh.nx();
  const int ncells = axis_x ? mesh.nx() : mesh.ny();
  const double hs = axis_x ? mesh.hy() : mesh.hx();
  const double hc = axis_x ? mesh.hx() : mesh.hy();
  const double s0 = axis_x ? mesh.domain().c : mesh.domain().a;
  const double c0 = axis_x ? mesh.domain().a : mesh.domain().c;

  std::vector<double> xq, wq, tq, tw;
  double acc = 0.0;
  for (int strip = 0; strip < nstrips; ++strip) {
    const double lo = s0 + strip * hs;
    // endpoint-clustered panels in both directions, mirroring the assembly
    // treatment of the |.|^{1-mu} breakpoint behavior
    tq.clear();
    tw.clear();
    map_gauss_endpoint(gt, lo, lo + hs, tq, tw, 2);
    for (std::size_t g = 0; g < tq.size(); ++g) {
      const double t = tq[g];
      const double wt = tw[g];
      const double frac = (t - lo) / hs;

      PiecewiseLinearTrace profile =
          axis_x ? field_h.profile_along_x(t) : field_h.profile_along_y(t);

      xq.clear();
      wq.clear();
      for (int i = 0; i < ncells; ++i) {
        const double e0 = c0 + i * hc;
        map_gauss_endpoint(ga, e0, e0 + frac * hc, xq, wq, 3);
        map_gauss_endpoint(ga, e0 + frac * hc, e0 + hc, xq, wq, 3);
      }

      double line = 0.0;
      for (std::size_t p = 0; p < xq.size(); ++p) {
        const double x = xq[p];
        double Le, Re;
        if (axis_x) {
          Le = exact.left_mu_x(x, t, mu);
          Re = exact.right_mu_x(x, t, mu);
        } else {
          Le = exact.left_mu_y(t, x, mu);
          Re = exact.right_mu_y(t, x, mu);
        }
        Le -= rl_left_pwl(profile, mu, x);
        Re -= rl_right_pwl(profile, mu, x);
        line += wq[p] * 2.0 * Le * Re;
      }
      acc += coeff * wt * line;
    }
  }
  return acc;
}

}  // namespace

double energy_error(const Mesh& mesh, const DiscreteField& field_h,
                    const SeparableBubbleField& exact, const FracOrder& order,
                    double kappa1, double kappa2, const QuadratureSpec& quad) {
  const double mu = order.mu();
  const double pref = order.cos_factor();
  const GaussRule gt = gauss_legendre(quad.n_transverse);
  const GaussRule ga = gauss_legendre(quad.n_axial);

  double lambda = 0.0;
  if (kappa1 != 0.0)
    lambda += energy_axis(mesh, field_h, exact, mu, kappa1 * pref, gt, ga, true);
  if (kappa2 != 0.0)
    lambda += energy_axis(mesh, field_h, exact, mu, kappa2 * pref, gt, ga, false);

  double l2 = l2_error(
      mesh, [&](double x, double y) { return field_h.value(x, y); },
      [&](double x, double y) { return exact.value(x, y); });
  return std::sqrt(l2 * l2 + std::abs(lambda));
}

double energy_error_surrogate(const Mesh& mesh, const DiscreteField& field_h,
                              const Field& exact, const Eigen::MatrixXd& A) {
  Eigen::VectorXd d = interpolate_nodal(mesh, exact).coeffs() - field_h.coeffs();
  return std::sqrt(d.dot(A * d));
}

DiscreteField interpolate_nodal(const Mesh& mesh, const Field& exact) {
  Eigen::VectorXd c(mesh.num_interior());
  for (int node : mesh.interior_nodes()) {
    Eigen::Vector2d p = mesh.node(node);
    c[mesh.interior_offset(node)] = exact(p.x(), p.y());
  }
  return DiscreteField(mesh, std::move(c));
}

double convergence_order(double e1, double e2, double h1, double h2) {
  if (!(e1 > 0.0 && e2 > 0.0 && h1 > 0.0 && h2 > 0.0))
    throw std::invalid_argument("convergence_order: errors and mesh sizes must be positive");
  if (h1 == h2) throw std::invalid_argument("convergence_order: h1 == h2");
  return std::log2(e1 / e2) / std::log2(h1 / h2);
}

void ConvergenceReport::write_csv(std::ostream& out) const {
  out.precision(16);
  out << std::scientific;
  out << "h,err_q_L2,order_q,err_p_eng,order_p,err_u_eng,order_u\n";
  for (const auto& row : rows) {
    out << row.h << "," << row.err_q << ",";
    if (row.has_order) out << row.order_q;
    out << "," << row.err_p << ",";
    if (row.has_order) out << row.order_p;
    out << "," << row.err_u << ",";
    if (row.has_order) out << row.order_u;
    out << "\n";
  }
}

void ConvergenceReport::write_csv_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("ConvergenceReport: cannot open " + path);
  write_csv(out);
}

}  // namespace fracfem
