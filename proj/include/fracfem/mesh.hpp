#ifndef FRACFEM_MESH_HPP
#define FRACFEM_MESH_HPP

#include <Eigen/Core>

#include <array>
#include <vector>

namespace fracfem {

/// Axis-aligned rectangle (a,b) x (c,d).
struct Domain {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
  double d = 1.0;

  double width() const { return b - a; }
  double height() const { return d - c; }
  double area() const { return width() * height(); }
  bool valid() const { return a < b && c < d; }
};

inline Domain unit_square() { return Domain{0.0, 1.0, 0.0, 1.0}; }

/// Continuous piecewise-linear function of one variable with compact support:
/// identically zero outside [breakpoints.front(), breakpoints.back()].
/// An empty breakpoint list is the zero function.
class PiecewiseLinearTrace {
 public:
  PiecewiseLinearTrace() = default;
  PiecewiseLinearTrace(std::vector<double> breakpoints, std::vector<double> values);

  bool empty() const { return breakpoints_.empty(); }
  std::size_t segments() const { return empty() ? 0 : breakpoints_.size() - 1; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

  double support_begin() const { return breakpoints_.front(); }
  double support_end() const { return breakpoints_.back(); }

  /// Slope on segment (t_k, t_{k+1}).
  double slope(std::size_t k) const {
    return (values_[k + 1] - values_[k]) / (breakpoints_[k + 1] - breakpoints_[k]);
  }

  /// Evaluate; zero outside the support.
  double operator()(double t) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Structured triangulation of a rectangle: uniform (nx x ny) grid of cells,
/// each split along the lower-left to upper-right diagonal. Nodes are stored
/// row-major; P1 degrees of freedom attach to interior nodes only.
class Mesh {
 public:
  Mesh(const Domain& domain, int nx, int ny);

  const Domain& domain() const { return domain_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }

  /// Reported mesh parameter (b-a)/nx.
  double h_leg() const { return hx_; }
  /// Maximum triangle diameter.
  double h_diam() const;

  int num_nodes() const { return (nx_ + 1) * (ny_ + 1); }
  int num_triangles() const { return 2 * nx_ * ny_; }
  int num_interior() const { return static_cast<int>(interior_nodes_.size()); }

  int node_index(int i, int j) const { return j * (nx_ + 1) + i; }
  int node_i(int node) const { return node % (nx_ + 1); }
  int node_j(int node) const { return node / (nx_ + 1); }
  Eigen::Vector2d node(int node) const;

  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  double triangle_area() const { return 0.5 * hx_ * hy_; }

  const std::vector<int>& interior_nodes() const { return interior_nodes_; }
  bool is_interior(int node) const;
  /// Position of a node in the interior ordering, -1 for boundary nodes.
  int interior_offset(int node) const { return interior_offset_[node]; }

  /// Vertices and barycentric weights of the triangle containing (x, y).
  std::array<std::pair<int, double>, 3> local_coordinates(double x, double y) const;

  /// Nodal P1 basis function evaluated at (x, y).
  double basis_value(int node, double x, double y) const;

  /// Restriction of basis node to the horizontal line at height y.
  /// y must lie strictly inside the domain and off horizontal mesh lines.
  PiecewiseLinearTrace trace_along_x(int node, double y) const;

  /// Restriction of basis node to the vertical line at abscissa x.
  PiecewiseLinearTrace trace_along_y(int node, double x) const;

 private:
  Domain domain_;
  int nx_ = 0, ny_ = 0;
  double hx_ = 0.0, hy_ = 0.0;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<int> interior_nodes_;
  std::vector<int> interior_offset_;
};

inline Mesh build_structured_mesh(const Domain& domain, int nx, int ny) {
  return Mesh(domain, nx, ny);
}

}  // namespace fracfem

#endif
