#include "fracfem/ocp.hpp"

#include <cmath>
#include <string>

namespace fracfem {

void OCPProblem::validate() const {
  if (!(gamma > 0.0)) throw std::invalid_argument("OCPProblem: gamma must be positive");
  if (!(v1 < v2)) throw std::invalid_argument("OCPProblem: need v1 < v2");
  if (!(kappa1 > 0.0 && kappa2 > 0.0))
    throw std::invalid_argument("OCPProblem: kappa1, kappa2 must be positive");
  if (!g || !u_d) throw std::invalid_argument("OCPProblem: g and u_d must be set");
}

FixedPointDivergence::FixedPointDivergence(int iters, double last_norm)
    : std::runtime_error("fixed-point iteration did not converge after " +
                         std::to_string(iters) +
                         " iterations (last update norm " + std::to_string(last_norm) +
                         "); consider relaxation < 1"),
      last_update_norm(last_norm) {}

OCPSolution fixed_point_solve(const OCPProblem& problem, const Mesh& mesh,
                              const QuadratureSpec& quad, const FixedPointOptions& opts) {
  problem.validate();
  if (!(opts.tol > 0.0)) throw std::invalid_argument("fixed_point_solve: tol must be > 0");
  if (!(opts.relaxation > 0.0 && opts.relaxation <= 1.0))
    throw std::invalid_argument("fixed_point_solve: relaxation must lie in (0,1]");

  SpdSolver solver(assemble_stiffness(mesh, problem.order, problem.kappa1, problem.kappa2, quad));
  MeshQuadrature mq = mesh_quadrature(mesh);
  const Eigen::Index P = static_cast<Eigen::Index>(mq.weights.size());

  Eigen::VectorXd g_vals(P), ud_vals(P), w(P);
  for (Eigen::Index k = 0; k < P; ++k) {
    g_vals[k] = problem.g(mq.points[k].x(), mq.points[k].y());
    ud_vals[k] = problem.u_d(mq.points[k].x(), mq.points[k].y());
    w[k] = mq.weights[static_cast<std::size_t>(k)];
  }

  const double q0 = opts.has_initial ? opts.initial_control : 0.5 * (problem.v1 + problem.v2);
  Eigen::VectorXd q = Eigen::VectorXd::Constant(P, q0);

  OCPSolution sol{DiscreteField::zero(mesh), DiscreteField::zero(mesh),
                  problem.gamma, problem.v1, problem.v2, 0, 0.0, {}};
  const double theta = opts.relaxation;

  for (int it = 0; it < opts.max_iter; ++it) {
    DiscreteField u(mesh, solver.solve(assemble_load_values(mesh, mq, g_vals + q)));

    Eigen::VectorXd u_vals(P);
    for (Eigen::Index k = 0; k < P; ++k)
      u_vals[k] = u.value(mq.points[k].x(), mq.points[k].y());
    DiscreteField p(mesh, solver.solve(assemble_load_values(mesh, mq, u_vals - ud_vals)));

    double upd2 = 0.0, cost = 0.0;
    for (Eigen::Index k = 0; k < P; ++k) {
      double proj = project_control(p.value(mq.points[k].x(), mq.points[k].y()),
                                    problem.gamma, problem.v1, problem.v2);
      double qn = (1.0 - theta) * q[k] + theta * proj;
      double du = qn - q[k];
      upd2 += w[k] * du * du;
      double e = u_vals[k] - ud_vals[k];
      cost += w[k] * (0.5 * e * e + 0.5 * problem.gamma * q[k] * q[k]);
      q[k] = qn;
    }
    double upd = std::sqrt(upd2);
    sol.log.push_back({it, upd, cost});
    sol.u_h = std::move(u);
    sol.p_h = std::move(p);
    sol.iterations = it + 1;
    sol.final_update_norm = upd;
    if (upd <= opts.tol) return sol;
  }
  throw FixedPointDivergence(opts.max_iter, sol.final_update_norm);
}

double evaluate_cost(const Mesh& mesh, const DiscreteField& u_h, const Field& q,
                     const Field& u_d, double gamma) {
  return integrate(mesh, [&](double x, double y) {
    double e = u_h.value(x, y) - u_d(x, y);
    double qc = q(x, y);
    return 0.5 * e * e + 0.5 * gamma * qc * qc;
  });
}

}  // namespace fracfem
