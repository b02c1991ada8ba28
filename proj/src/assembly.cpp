#include "fracfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace fracfem {

namespace {

void check_quad(const QuadratureSpec& quad) {
  if (quad.n_transverse < 2 || quad.n_axial < 2)
    throw std::invalid_argument("quadrature spec: need n_transverse >= 2 and n_axial >= 2");
}

// One direction of the bilinear form, integrated strip by strip. For the x
// direction a strip is a row of cells; for y, a column.
void accumulate_axis(const Mesh& mesh, double mu, double coeff, const GaussRule& gt,
                     const GaussRule& ga, bool axis_x, Eigen::MatrixXd& A) {
  const int nstrips = axis_x ? mesh.ny() : mesh.nx();
  const int ncells = axis_x ? mesh.nx() : mesh.ny();
  const double hs = axis_x ? mesh.hy() : mesh.hx();
  const double hc = axis_x ? mesh.hx() : mesh.hy();
  const double s0 = axis_x ? mesh.domain().c : mesh.domain().a;
  const double c0 = axis_x ? mesh.domain().a : mesh.domain().c;
  const int n_cross = axis_x ? mesh.nx() : mesh.ny();  // interior dof range along strip
  (void)n_cross;

  std::vector<double> xq, wq, tq, tw;
  std::vector<int> dofs;
  std::vector<std::vector<double>> L, R;

  for (int strip = 0; strip < nstrips; ++strip) {
    const double lo = s0 + strip * hs;
    // transverse integrand has |t - edge|^{3-2mu} endpoint behavior at the
    // strip edges: a quadratic clustering map handles that mild exponent
    // without starving the smooth interior of points
    tq.clear();
    tw.clear();
    map_gauss_endpoint(gt, lo, lo + hs, tq, tw, 2);
    for (std::size_t g = 0; g < tq.size(); ++g) {
      const double t = tq[g];
      const double wt = tw[g];
      const double frac = (t - lo) / hs;

      // quadrature along the axis: every cell split at its diagonal crossing;
      // the fractional derivative of a pwl trace behaves like
      // |x - breakpoint|^{1-mu} next to each breakpoint, so each subinterval
      // gets the endpoint-clustered two-panel rule
      xq.clear();
      wq.clear();
      for (int i = 0; i < ncells; ++i) {
        const double e0 = c0 + i * hc;
        const double ec = e0 + frac * hc;
        const double e1 = e0 + hc;
        map_gauss_endpoint(ga, e0, ec, xq, wq, 3);
        map_gauss_endpoint(ga, ec, e1, xq, wq, 3);
      }
      const std::size_t P = xq.size();

      // traces of every basis function whose support meets this line
      dofs.clear();
      L.clear();
      R.clear();
      for (int node : mesh.interior_nodes()) {
        const int row = axis_x ? mesh.node_j(node) : mesh.node_i(node);
        if (row != strip && row != strip + 1) continue;
        PiecewiseLinearTrace trace =
            axis_x ? mesh.trace_along_x(node, t) : mesh.trace_along_y(node, t);
        if (trace.empty()) continue;
        dofs.push_back(mesh.interior_offset(node));
        L.emplace_back(P);
        R.emplace_back(P);
        auto& Ln = L.back();
        auto& Rn = R.back();
        for (std::size_t p = 0; p < P; ++p) {
          Ln[p] = rl_left_pwl(trace, mu, xq[p]);
          Rn[p] = rl_right_pwl(trace, mu, xq[p]);
        }
      }

      for (std::size_t m = 0; m < dofs.size(); ++m) {
        for (std::size_t n = m; n < dofs.size(); ++n) {
          double s = 0.0;
          for (std::size_t p = 0; p < P; ++p)
            s += wq[p] * (L[m][p] * R[n][p] + R[m][p] * L[n][p]);
          const double contrib = coeff * wt * s;
          A(dofs[m], dofs[n]) += contrib;
          if (dofs[m] != dofs[n]) A(dofs[n], dofs[m]) += contrib;
        }
      }
    }
  }
}

}  // namespace

Eigen::MatrixXd assemble_stiffness(const Mesh& mesh, const FracOrder& order,
                                   double kappa1, double kappa2,
                                   const QuadratureSpec& quad) {
  check_quad(quad);
  const int N = mesh.num_interior();
  if (N == 0) throw std::invalid_argument("assemble_stiffness: mesh has no interior nodes");

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
  const double mu = order.mu();
  const double pref = order.cos_factor();
  const GaussRule gt = gauss_legendre(quad.n_transverse);
  const GaussRule ga = gauss_legendre(quad.n_axial);
  if (kappa1 != 0.0) accumulate_axis(mesh, mu, kappa1 * pref, gt, ga, true, A);
  if (kappa2 != 0.0) accumulate_axis(mesh, mu, kappa2 * pref, gt, ga, false, A);
  return A;
}

namespace {

Eigen::MatrixXd mass_impl(const Mesh& mesh, bool interior_only) {
  const int N = interior_only ? mesh.num_interior() : mesh.num_nodes();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  const double s = mesh.triangle_area() / 12.0;
  for (const auto& tri : mesh.triangles()) {
    for (int a = 0; a < 3; ++a) {
      int da = interior_only ? mesh.interior_offset(tri[a]) : tri[a];
      if (da < 0) continue;
      for (int b = 0; b < 3; ++b) {
        int db = interior_only ? mesh.interior_offset(tri[b]) : tri[b];
        if (db < 0) continue;
        M(da, db) += (a == b ? 2.0 : 1.0) * s;
      }
    }
  }
  return M;
}

}  // namespace

Eigen::MatrixXd assemble_mass(const Mesh& mesh) { return mass_impl(mesh, true); }

Eigen::MatrixXd assemble_mass_full(const Mesh& mesh) { return mass_impl(mesh, false); }

Eigen::VectorXd assemble_load(const Mesh& mesh, const Field& f, const QuadratureSpec&) {
  MeshQuadrature mq = mesh_quadrature(mesh);
  Eigen::VectorXd values(mq.weights.size());
  for (std::size_t k = 0; k < mq.weights.size(); ++k)
    values[static_cast<Eigen::Index>(k)] = f(mq.points[k].x(), mq.points[k].y());
  return assemble_load_values(mesh, mq, values);
}

Eigen::VectorXd assemble_load_values(const Mesh& mesh, const MeshQuadrature& mq,
                                     const Eigen::VectorXd& values) {
  const TriangleRule& rule = triangle_rule_degree5();
  const std::size_t npt = rule.weights.size();
  if (mq.weights.size() != mesh.triangles().size() * npt ||
      values.size() != static_cast<Eigen::Index>(mq.weights.size()))
    throw std::invalid_argument("assemble_load_values: quadrature size mismatch");

  Eigen::VectorXd b = Eigen::VectorXd::Zero(mesh.num_interior());
  std::size_t k = 0;
  for (const auto& tri : mesh.triangles()) {
    for (std::size_t p = 0; p < npt; ++p, ++k) {
      const double fw = mq.weights[k] * values[static_cast<Eigen::Index>(k)];
      if (fw == 0.0) continue;
      for (int a = 0; a < 3; ++a) {
        int dof = mesh.interior_offset(tri[a]);
        if (dof >= 0) b[dof] += fw * rule.barycentric[p][a];
      }
    }
  }
  return b;
}

Eigen::MatrixXd assemble_laplacian(const Mesh& mesh, double kappa1, double kappa2) {
  const int N = mesh.num_interior();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
  const double area = mesh.triangle_area();
  for (const auto& tri : mesh.triangles()) {
    Eigen::Vector2d v[3] = {mesh.node(tri[0]), mesh.node(tri[1]), mesh.node(tri[2])};
    // grad of barycentric a is the rotated opposite edge over twice the area
    Eigen::Vector2d grad[3];
    for (int a = 0; a < 3; ++a) {
      Eigen::Vector2d e = v[(a + 2) % 3] - v[(a + 1) % 3];
      grad[a] = Eigen::Vector2d(-e.y(), e.x()) / (2.0 * area);
    }
    for (int a = 0; a < 3; ++a) {
      int da = mesh.interior_offset(tri[a]);
      if (da < 0) continue;
      for (int b = 0; b < 3; ++b) {
        int db = mesh.interior_offset(tri[b]);
        if (db < 0) continue;
        K(da, db) += area * (kappa1 * grad[a].x() * grad[b].x() +
                             kappa2 * grad[a].y() * grad[b].y());
      }
    }
  }
  return K;
}

namespace {

// Derivative of a basis function along one axis by central differencing of the
// 2D evaluation; step chosen well below the distance of Gauss nodes to element
// interfaces.
double basis_axis_slope(const Mesh& mesh, int node, bool axis_x, double s, double t,
                        double step) {
  double fp, fm;
  if (axis_x) {
    fp = mesh.basis_value(node, s + step, t);
    fm = mesh.basis_value(node, s - step, t);
  } else {
    fp = mesh.basis_value(node, t, s + step);
    fm = mesh.basis_value(node, t, s - step);
  }
  return (fp - fm) / (2.0 * step);
}

// Subdivision points along the axis: mesh lines plus the diagonal crossing of
// the transverse line within each cell.
std::vector<double> axis_splits(const Mesh& mesh, bool axis_x, double t) {
  const double c0 = axis_x ? mesh.domain().a : mesh.domain().c;
  const double s0 = axis_x ? mesh.domain().c : mesh.domain().a;
  const double hc = axis_x ? mesh.hx() : mesh.hy();
  const double hs = axis_x ? mesh.hy() : mesh.hx();
  const int ncells = axis_x ? mesh.nx() : mesh.ny();
  const int nstrips = axis_x ? mesh.ny() : mesh.nx();
  int strip = std::clamp(static_cast<int>(std::floor((t - s0) / hs)), 0, nstrips - 1);
  double frac = (t - (s0 + strip * hs)) / hs;
  std::vector<double> pts;
  for (int i = 0; i < ncells; ++i) {
    pts.push_back(c0 + i * hc);
    pts.push_back(c0 + (i + frac) * hc);
  }
  pts.push_back(c0 + ncells * hc);
  return pts;
}

// Left RL derivative of order mu of the restriction of a basis function to a
// transverse line, by adaptive quadrature of the Caputo-form convolution with
// a graded substitution at the singular endpoint.
double numeric_rl(const Mesh& mesh, int node, bool axis_x, double t, double x, double mu,
                  bool left, double tol) {
  const double hc = axis_x ? mesh.hx() : mesh.hy();
  std::vector<double> splits = axis_splits(mesh, axis_x, t);

  // Inside a split interval the trace is linear, so one centered difference at
  // the segment midpoint (step clear of both kinks) gives the slope exactly;
  // a pointwise step near the segment ends would drown in cancellation noise.
  auto make_slope = [&](double seg_lo, double seg_hi) {
    const double mid = 0.5 * (seg_lo + seg_hi);
    const double step =
        std::max(0.45 * std::min(mid - seg_lo, 2e-3 * hc), 1e-13 * hc);
    const double s = basis_axis_slope(mesh, node, axis_x, mid, t, step);
    return [s](double) { return s; };
  };

  // Substituting tau = |x - w|^{1-mu} on every segment turns the weakly
  // singular weight into the constant 1/(1-mu); the integrand is then the
  // (bounded) slope alone, whatever the distance of x to the segment.
  const double e = 1.0 - mu;
  double acc = 0.0;
  if (left) {
    if (x <= splits.front()) return 0.0;
    for (std::size_t k = 0; k + 1 < splits.size(); ++k) {
      double u = splits[k], v = std::min(splits[k + 1], x);
      if (u >= x) break;
      auto slope = make_slope(splits[k], splits[k + 1]);
      double t_lo = (v < x) ? std::pow(x - v, e) : 0.0;
      double t_hi = std::pow(x - u, e);
      acc += adaptive_gk([&](double tau) { return slope(x - std::pow(tau, 1.0 / e)); },
                         t_lo, t_hi, tol, tol * 1e-2) /
             e;
    }
  } else {
    if (x >= splits.back()) return 0.0;
    for (std::size_t k = splits.size() - 1; k > 0; --k) {
      double v = splits[k], u = std::max(splits[k - 1], x);
      if (v <= x) break;
      auto slope = make_slope(splits[k - 1], splits[k]);
      double t_lo = (u > x) ? std::pow(u - x, e) : 0.0;
      double t_hi = std::pow(v - x, e);
      acc -= adaptive_gk([&](double tau) { return slope(x + std::pow(tau, 1.0 / e)); },
                         t_lo, t_hi, tol, tol * 1e-2) /
             e;
    }
  }
  return acc / std::tgamma(1.0 - mu);
}

// Adaptive integral over [a, b] through the quartic endpoint map, so the
// |x - end|^{1-mu} kinks of the derivative products do not stall bisection.
double reg_adaptive(const std::function<double(double)>& f, double a, double b,
                    double rel_tol, double abs_tol) {
  const double m = 0.5 * (a + b), d = m - a;
  auto left = [&](double s) {
    const double s3 = s * s * s;
    return f(a + d * s3 * s) * 4.0 * d * s3;
  };
  auto right = [&](double s) {
    const double s3 = s * s * s;
    return f(b - d * s3 * s) * 4.0 * d * s3;
  };
  return adaptive_gk(left, 0.0, 1.0, rel_tol, 0.5 * abs_tol) +
         adaptive_gk(right, 0.0, 1.0, rel_tol, 0.5 * abs_tol);
}

}  // namespace

double oracle_stiffness_entry(const Mesh& mesh, int node_i, int node_j,
                              const FracOrder& order, double kappa1, double kappa2,
                              double tol) {
  if (mesh.num_interior() > 25)
    throw std::invalid_argument("oracle_stiffness_entry: tiny meshes only (<= 25 dofs)");
  if (!mesh.is_interior(node_i) || !mesh.is_interior(node_j))
    throw std::invalid_argument("oracle_stiffness_entry: nodes must be interior");

  const double mu = order.mu();
  const double pref = order.cos_factor();
  const GaussRule gt = gauss_legendre(8);
  const double inner_tol = tol * 1e-1;
  double entry = 0.0;

  for (int pass = 0; pass < 2; ++pass) {
    const bool axis_x = (pass == 0);
    const double kappa = axis_x ? kappa1 : kappa2;
    if (kappa == 0.0) continue;
    const int nstrips = axis_x ? mesh.ny() : mesh.nx();
    const double hs = axis_x ? mesh.hy() : mesh.hx();
    const double s0 = axis_x ? mesh.domain().c : mesh.domain().a;
    const int row_i = axis_x ? mesh.node_j(node_i) : mesh.node_i(node_i);
    const int row_j = axis_x ? mesh.node_j(node_j) : mesh.node_i(node_j);

    double axis_acc = 0.0;
    for (int strip = 0; strip < nstrips; ++strip) {
      if (row_i != strip && row_i != strip + 1) continue;
      if (row_j != strip && row_j != strip + 1) continue;
      const double lo = s0 + strip * hs;
      std::vector<double> tq, tw;
      map_gauss_endpoint(gt, lo, lo + hs, tq, tw);
      for (std::size_t g = 0; g < tq.size(); ++g) {
        const double t = tq[g];
        const double wt = tw[g];
        std::vector<double> splits = axis_splits(mesh, axis_x, t);
        auto integrand = [&](double x) {
          double Lj = numeric_rl(mesh, node_j, axis_x, t, x, mu, true, inner_tol);
          double Ri = numeric_rl(mesh, node_i, axis_x, t, x, mu, false, inner_tol);
          double Rj = numeric_rl(mesh, node_j, axis_x, t, x, mu, false, inner_tol);
          double Li = numeric_rl(mesh, node_i, axis_x, t, x, mu, true, inner_tol);
          return Lj * Ri + Rj * Li;
        };
        double line = 0.0;
        for (std::size_t k = 0; k + 1 < splits.size(); ++k)
          line += reg_adaptive(integrand, splits[k], splits[k + 1], tol, tol * 1e-3);
        axis_acc += wt * line;
      }
    }
    entry += kappa * pref * axis_acc;
  }
  return entry;
}

void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_matrix_csv: cannot open " + path);
  out.precision(17);
  out << std::scientific;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << m(r, c);
    out << "\n";
  }
}

}  // namespace fracfem
