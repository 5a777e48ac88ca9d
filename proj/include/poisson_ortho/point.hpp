#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace poisson_ortho {

/// A point of a single coordinate chart. Coordinates are indexed from 0;
/// in expressions coordinate i is written x{i+1}.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  /// Copy of this point with one coordinate moved by `delta`.
  Point shifted(int axis, double delta) const;

  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Axis-aligned sampling box.
struct Grid {
  Point center;
  std::vector<double> half_width;
  std::vector<int> points_per_axis;

  /// Same half width and point count on every axis.
  static Grid uniform(Point center, double half_width, int points_per_axis);

  int dim() const { return center.dim(); }
  std::size_t size() const;
  void validate() const;
};

/// Grid points in lexicographic order, axis 0 varying slowest.
std::vector<Point> sample(const Grid& grid);

}  // namespace poisson_ortho
