#include "poisson_ortho/condition_report.hpp"

#include <stdexcept>

namespace poisson_ortho {

ConditionReport ConditionReport::from_residuals(std::string id, std::string description, std::vector<Point> points,
                                                std::vector<double> residuals, double tolerance) {
  if (points.size() != residuals.size()) throw std::invalid_argument("one residual per point is required");
  ConditionReport r;
  r.id = std::move(id);
  r.description = std::move(description);
  r.points = std::move(points);
  r.residuals = std::move(residuals);
  r.tolerance = tolerance;
  for (std::size_t i = 0; i < r.residuals.size(); ++i) {
    if (r.residuals[i] > r.max_residual) {
      r.max_residual = r.residuals[i];
      r.witness = i;
    }
  }
  r.holds = r.max_residual <= tolerance;
  return r;
}

}  // namespace poisson_ortho
