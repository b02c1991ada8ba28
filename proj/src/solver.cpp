#include "fracfem/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracfem {

DiscreteField::DiscreteField(const Mesh& mesh, Eigen::VectorXd coeffs)
    : mesh_(&mesh), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != mesh.num_interior())
    throw std::invalid_argument("DiscreteField: coefficient count != interior node count");
}

DiscreteField DiscreteField::zero(const Mesh& mesh) {
  return DiscreteField(mesh, Eigen::VectorXd::Zero(mesh.num_interior()));
}

double DiscreteField::node_value(int node) const {
  int dof = mesh_->interior_offset(node);
  return dof < 0 ? 0.0 : coeffs_[dof];
}

double DiscreteField::value(double x, double y) const {
  const Domain& dom = mesh_->domain();
  if (x <= dom.a || x >= dom.b || y <= dom.c || y >= dom.d) return 0.0;
  double v = 0.0;
  for (const auto& [node, w] : mesh_->local_coordinates(x, y)) v += w * node_value(node);
  return v;
}

PiecewiseLinearTrace DiscreteField::profile_along_x(double y) const {
  const Domain& dom = mesh_->domain();
  if (!(y > dom.c && y < dom.d))
    throw std::invalid_argument("profile_along_x: y outside the open domain");
  int strip = std::clamp(static_cast<int>(std::floor((y - dom.c) / mesh_->hy())), 0,
                         mesh_->ny() - 1);
  double frac = (y - (dom.c + strip * mesh_->hy())) / mesh_->hy();
  std::vector<double> xs, vals;
  for (int i = 0; i < mesh_->nx(); ++i) {
    xs.push_back(dom.a + i * mesh_->hx());
    xs.push_back(dom.a + (i + frac) * mesh_->hx());
  }
  xs.push_back(dom.b);
  for (double x : xs) vals.push_back(value(x, y));
  return PiecewiseLinearTrace(std::move(xs), std::move(vals));
}

PiecewiseLinearTrace DiscreteField::profile_along_y(double x) const {
  const Domain& dom = mesh_->domain();
  if (!(x > dom.a && x < dom.b))
    throw std::invalid_argument("profile_along_y: x outside the open domain");
  int strip = std::clamp(static_cast<int>(std::floor((x - dom.a) / mesh_->hx())), 0,
                         mesh_->nx() - 1);
  double frac = (x - (dom.a + strip * mesh_->hx())) / mesh_->hx();
  std::vector<double> ys, vals;
  for (int j = 0; j < mesh_->ny(); ++j) {
    ys.push_back(dom.c + j * mesh_->hy());
    ys.push_back(dom.c + (j + frac) * mesh_->hy());
  }
  ys.push_back(dom.d);
  for (double y : ys) vals.push_back(value(x, y));
  return PiecewiseLinearTrace(std::move(ys), std::move(vals));
}

SpdSolver::SpdSolver(Eigen::MatrixXd A) : A_(std::move(A)), llt_(A_) {
  if (llt_.info() != Eigen::Success)
    throw std::runtime_error(
        "matrix not SPD: Cholesky factorization failed (check operator sign conventions)");
}

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& b) const {
  Eigen::VectorXd x = llt_.solve(b);
  x += llt_.solve(b - A_ * x);  // one refinement step
  return x;
}

DiscreteField solve_state(const SpdSolver& solver, const Mesh& mesh, const Field& g,
                          const Field& q, const QuadratureSpec& quad) {
  Eigen::VectorXd b = assemble_load(
      mesh, [&](double x, double y) { return g(x, y) + q(x, y); }, quad);
  return DiscreteField(mesh, solver.solve(b));
}

DiscreteField solve_adjoint(const SpdSolver& solver, const Mesh& mesh,
                            const DiscreteField& u_h, const Field& u_d,
                            const QuadratureSpec& quad) {
  Eigen::VectorXd b = assemble_load(
      mesh, [&](double x, double y) { return u_h.value(x, y) - u_d(x, y); }, quad);
  return DiscreteField(mesh, solver.solve(b));
}

}  // namespace fracfem
