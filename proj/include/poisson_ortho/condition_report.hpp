#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "poisson_ortho/point.hpp"

namespace poisson_ortho {

/// Residuals of one criterion over a set of points.
struct ConditionReport {
  std::string id;
  std::string description;
  std::vector<Point> points;
  std::vector<double> residuals;
  double max_residual = 0.0;
  /// Index into `points` of the largest residual.
  std::size_t witness = 0;
  double tolerance = 0.0;
  bool holds = true;

  static ConditionReport from_residuals(std::string id, std::string description, std::vector<Point> points,
                                        std::vector<double> residuals, double tolerance);

  const Point& witness_point() const { return points.at(witness); }
  bool holds_at(std::size_t i) const { return residuals.at(i) <= tolerance; }
};

}  // namespace poisson_ortho
