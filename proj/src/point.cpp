#include "poisson_ortho/point.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace poisson_ortho {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("point must have at least one coordinate");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("point coordinates must be finite");
  }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::shifted(int axis, double delta) const {
  std::vector<double> moved = coords_;
  moved.at(static_cast<std::size_t>(axis)) += delta;
  return Point(std::move(moved));
}

std::string Point::to_string() const {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", coords_[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

Grid Grid::uniform(Point center, double half_width, int points_per_axis) {
  const auto n = static_cast<std::size_t>(center.dim());
  return Grid{std::move(center), std::vector<double>(n, half_width),
              std::vector<int>(n, points_per_axis)};
}

std::size_t Grid::size() const {
  std::size_t total = 1;
  for (int n : points_per_axis) total *= static_cast<std::size_t>(n);
  return total;
}

void Grid::validate() const {
  const auto n = static_cast<std::size_t>(center.dim());
  if (n == 0) throw std::invalid_argument("grid center is empty");
  if (half_width.size() != n || points_per_axis.size() != n)
    throw std::invalid_argument("grid half_width and points_per_axis must match the center dimension");
  for (double w : half_width) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("grid half_width must be finite and >= 0");
  }
  for (int p : points_per_axis) {
    if (p < 1) throw std::invalid_argument("grid points_per_axis must be >= 1");
  }
}

std::vector<Point> sample(const Grid& grid) {
  grid.validate();
  const auto n = static_cast<std::size_t>(grid.dim());

  // Per-axis coordinate values, uniformly spaced over [c - w, c + w].
  std::vector<std::vector<double>> axes(n);
  for (std::size_t a = 0; a < n; ++a) {
    const int count = grid.points_per_axis[a];
    const double c = grid.center[a];
    const double w = grid.half_width[a];
    if (count == 1) {
      axes[a] = {c};
      continue;
    }
    for (int i = 0; i < count; ++i) {
      const double t = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(count - 1);
      axes[a].push_back(c + w * t);
    }
  }

  std::vector<Point> points;
  points.reserve(grid.size());
  std::vector<std::size_t> index(n, 0);
  std::vector<double> coords(n);
  while (true) {
    for (std::size_t a = 0; a < n; ++a) coords[a] = axes[a][index[a]];
    points.emplace_back(coords);
    // Odometer increment, last axis fastest.
    std::size_t a = n;
    while (a > 0) {
      --a;
      if (++index[a] < axes[a].size()) break;
      index[a] = 0;
      if (a == 0) return points;
    }
  }
}

}  // namespace poisson_ortho
