#pragma once

#include <Eigen/Dense>
#include <vector>

#include "poisson_ortho/tensor_field.hpp"

namespace poisson_ortho {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Row-major n x n components as a matrix.
inline Matrix to_matrix(const Components& c, int n) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(c.data(), n, n);
}

inline Vector to_vector(const Components& c) { return Eigen::Map<const Vector>(c.data(), static_cast<Eigen::Index>(c.size())); }

inline Components to_components(const Vector& v) { return Components(v.data(), v.data() + v.size()); }

inline Components to_components(const Matrix& m) {
  Components c(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) c[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
  return c;
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

/// Numerical rank from singular values relative to the largest one.
int numerical_rank(const Matrix& m, double relative_threshold = 1e-9);

/// sigma_max / sigma_min; infinity for a singular matrix.
double condition_number(const Matrix& m);

}  // namespace poisson_ortho
