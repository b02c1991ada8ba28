#include "fracfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracfem {

PiecewiseLinearTrace::PiecewiseLinearTrace(std::vector<double> breakpoints,
                                           std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() != values_.size())
    throw std::invalid_argument("trace: breakpoint/value size mismatch");
  if (breakpoints_.size() == 1)
    throw std::invalid_argument("trace: need at least two breakpoints");
  for (std::size_t k = 0; k + 1 < breakpoints_.size(); ++k)
    if (!(breakpoints_[k] < breakpoints_[k + 1]))
      throw std::invalid_argument("trace: breakpoints must be strictly increasing");
}

double PiecewiseLinearTrace::operator()(double t) const {
  if (empty() || t <= breakpoints_.front() || t >= breakpoints_.back()) {
    if (!empty() && (t == breakpoints_.front() || t == breakpoints_.back()))
      return values_[t == breakpoints_.front() ? 0 : values_.size() - 1];
    return 0.0;
  }
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return values_[k] + slope(k) * (t - breakpoints_[k]);
}

Mesh::Mesh(const Domain& domain, int nx, int ny) : domain_(domain), nx_(nx), ny_(ny) {
  if (!domain.valid()) throw std::invalid_argument("mesh: invalid domain (need a < b, c < d)");
  if (nx < 1 || ny < 1) throw std::invalid_argument("mesh: nx, ny must be >= 1");
  hx_ = domain.width() / nx;
  hy_ = domain.height() / ny;

  triangles_.reserve(static_cast<std::size_t>(2 * nx * ny));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      // both counterclockwise, split along the lower-left/upper-right diagonal
      triangles_.push_back({node_index(i, j), node_index(i + 1, j), node_index(i + 1, j + 1)});
      triangles_.push_back({node_index(i, j), node_index(i + 1, j + 1), node_index(i, j + 1)});
    }
  }

  interior_offset_.assign(static_cast<std::size_t>(num_nodes()), -1);
  for (int j = 1; j < ny; ++j)
    for (int i = 1; i < nx; ++i) {
      interior_offset_[static_cast<std::size_t>(node_index(i, j))] =
          static_cast<int>(interior_nodes_.size());
      interior_nodes_.push_back(node_index(i, j));
    }
}

double Mesh::h_diam() const { return std::hypot(hx_, hy_); }

Eigen::Vector2d Mesh::node(int n) const {
  return {domain_.a + node_i(n) * hx_, domain_.c + node_j(n) * hy_};
}

bool Mesh::is_interior(int node) const {
  return interior_offset_[static_cast<std::size_t>(node)] >= 0;
}

std::array<std::pair<int, double>, 3> Mesh::local_coordinates(double x, double y) const {
  int i = std::clamp(static_cast<int>(std::floor((x - domain_.a) / hx_)), 0, nx_ - 1);
  int j = std::clamp(static_cast<int>(std::floor((y - domain_.c) / hy_)), 0, ny_ - 1);
  double s = (x - (domain_.a + i * hx_)) / hx_;
  double t = (y - (domain_.c + j * hy_)) / hy_;
  if (t <= s) {
    // lower triangle (i,j), (i+1,j), (i+1,j+1)
    return {{{node_index(i, j), 1.0 - s},
             {node_index(i + 1, j), s - t},
             {node_index(i + 1, j + 1), t}}};
  }
  // upper triangle (i,j), (i+1,j+1), (i,j+1)
  return {{{node_index(i, j), 1.0 - t},
           {node_index(i + 1, j + 1), s},
           {node_index(i, j + 1), t - s}}};
}

double Mesh::basis_value(int node, double x, double y) const {
  if (x < domain_.a || x > domain_.b || y < domain_.c || y > domain_.d) return 0.0;
  for (const auto& [n, w] : local_coordinates(x, y))
    if (n == node) return w;
  return 0.0;
}

PiecewiseLinearTrace Mesh::trace_along_x(int node, double y) const {
  if (!is_interior(node)) throw std::invalid_argument("trace_along_x: node must be interior");
  if (!(y > domain_.c && y < domain_.d))
    throw std::invalid_argument("trace_along_x: y outside the open domain");
  int strip = static_cast<int>(std::floor((y - domain_.c) / hy_));
  strip = std::clamp(strip, 0, ny_ - 1);
  int ik = node_i(node), jk = node_j(node);
  if (strip != jk - 1 && strip != jk) return {};

  // candidate breakpoints: vertical mesh lines of the support columns plus the
  // diagonal crossings of the line inside cells ik-1 and ik
  double frac = (y - (domain_.c + strip * hy_)) / hy_;
  std::vector<double> xs;
  for (int i = ik - 1; i <= ik; ++i) {
    xs.push_back(domain_.a + i * hx_);
    xs.push_back(domain_.a + (i + frac) * hx_);
  }
  xs.push_back(domain_.a + (ik + 1) * hx_);
  std::sort(xs.begin(), xs.end());

  std::vector<double> vals;
  vals.reserve(xs.size());
  for (double x : xs) vals.push_back(basis_value(node, x, y));

  // trim zero tails, keeping one zero endpoint on each side
  std::size_t lo = 0, hi = vals.size() - 1;
  while (lo < hi && vals[lo] == 0.0 && vals[lo + 1] == 0.0) ++lo;
  while (hi > lo && vals[hi] == 0.0 && vals[hi - 1] == 0.0) --hi;
  if (lo == hi) return {};
  return PiecewiseLinearTrace(std::vector<double>(xs.begin() + lo, xs.begin() + hi + 1),
                              std::vector<double>(vals.begin() + lo, vals.begin() + hi + 1));
}

PiecewiseLinearTrace Mesh::trace_along_y(int node, double x) const {
  if (!is_interior(node)) throw std::invalid_argument("trace_along_y: node must be interior");
  if (!(x > domain_.a && x < domain_.b))
    throw std::invalid_argument("trace_along_y: x outside the open domain");
  int strip = static_cast<int>(std::floor((x - domain_.a) / hx_));
  strip = std::clamp(strip, 0, nx_ - 1);
  int ik = node_i(node), jk = node_j(node);
  if (strip != ik - 1 && strip != ik) return {};

  double frac = (x - (domain_.a + strip * hx_)) / hx_;
  std::vector<double> ys;
  for (int j = jk - 1; j <= jk; ++j) {
    ys.push_back(domain_.c + j * hy_);
    ys.push_back(domain_.c + (j + frac) * hy_);
  }
  ys.push_back(domain_.c + (jk + 1) * hy_);
  std::sort(ys.begin(), ys.end());

  std::vector<double> vals;
  vals.reserve(ys.size());
  for (double yy : ys) vals.push_back(basis_value(node, x, yy));

  std::size_t lo = 0, hi = vals.size() - 1;
  while (lo < hi && vals[lo] == 0.0 && vals[lo + 1] == 0.0) ++lo;
  while (hi > lo && vals[hi] == 0.0 && vals[hi - 1] == 0.0) --hi;
  if (lo == hi) return {};
  return PiecewiseLinearTrace(std::vector<double>(ys.begin() + lo, ys.begin() + hi + 1),
                              std::vector<double>(vals.begin() + lo, vals.begin() + hi + 1));
}

}  // namespace fracfem
