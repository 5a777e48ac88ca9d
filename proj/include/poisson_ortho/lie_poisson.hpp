#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "poisson_ortho/condition_report.hpp"
#include "poisson_ortho/linalg.hpp"
#include "poisson_ortho/metric.hpp"
#include "poisson_ortho/poisson.hpp"
#include "poisson_ortho/rational.hpp"

namespace poisson_ortho {

/// Structure constants of a Lie algebra: [e_mu, e_nu] = c^sigma_{mu nu} e_sigma.
/// `at(mu, nu, sigma)` is c^sigma_{mu nu}; the upper index comes last.
class StructureConstants {
 public:
  explicit StructureConstants(int dim);

  int dim() const { return dim_; }
  const Rational& at(int mu, int nu, int sigma) const { return c_[index(mu, nu, sigma)]; }
  Rational& at(int mu, int nu, int sigma) { return c_[index(mu, nu, sigma)]; }

  /// Sets c^sigma_{mu nu} = value and c^sigma_{nu mu} = -value.
  void set_bracket(int mu, int nu, int sigma, Rational value);

  /// [a, b]^sigma = c^sigma_{mu nu} a^mu b^nu.
  Vector bracket(const Vector& a, const Vector& b) const;

 private:
  std::size_t index(int mu, int nu, int sigma) const {
    return static_cast<std::size_t>((mu * dim_ + nu) * dim_ + sigma);
  }
  int dim_;
  std::vector<Rational> c_;
};

struct ConstantsValidation {
  bool antisymmetric = true;
  bool jacobi = true;
  /// (mu, nu, sigma) with c^sigma_{mu nu} + c^sigma_{nu mu} != 0.
  std::vector<std::array<int, 3>> antisymmetry_violations;
  /// (mu, nu, sigma, tau) with a nonzero Jacobiator coefficient.
  std::vector<std::array<int, 4>> jacobi_violations;

  bool valid() const { return antisymmetric && jacobi; }
  std::string describe() const;
};

/// Exact antisymmetry and Jacobi checks.
ConstantsValidation validate_constants(const StructureConstants& sc);

using RationalMatrix = std::vector<std::vector<Rational>>;

/// K_{mu nu} = sum c^sigma_{mu rho} c^rho_{nu sigma}, exactly.
RationalMatrix killing_form(const StructureConstants& sc);

Matrix to_matrix(const RationalMatrix& m);

/// Largest |coefficient| of the Jacobiator of the linear bivector
/// P^{mu nu} = c^sigma_{mu nu} lambda_sigma, as a polynomial in lambda.
Rational linear_jacobi_residual(const StructureConstants& sc);

/// P^{mu nu}(lambda) = c^sigma_{mu nu} lambda_sigma as an exact field.
TensorField linear_poisson(const StructureConstants& sc);

struct BuiltinAlgebra {
  std::string name;
  StructureConstants constants{1};
  /// Casimir expressions in x1..xn.
  std::vector<std::string> casimirs;
  /// Constant factors applied to dc^i.
  std::vector<double> coframe_scales;
  /// Contravariant metric on the dual; the covariant metric is its inverse.
  Matrix contravariant_metric;
  std::function<bool(const Point&)> regular;
  Point default_center;
  double default_half_width = 0.2;
  int rank = 0;
};

/// so3, sl2r, so3xso3 or se3. Throws ConfigError for other names.
BuiltinAlgebra builtin_algebra(const std::string& name);

/// Poisson structure on the dual with the algebra's Casimirs and scales.
PoissonStructure lie_poisson_structure(const BuiltinAlgebra& algebra);

/// [[alpha I, beta I], [beta I, 0]].
Matrix se3_contravariant(double alpha, double beta);

/// Metric whose contravariant matrix is se3_contravariant(alpha, beta).
/// Throws DegeneracyError if beta == 0.
MetricField se3_metric(double alpha, double beta);

/// table[i][j] = [dc^i(p), dc^j(p)], covectors read as algebra elements.
std::vector<std::vector<Vector>> casimir_lie_bracket(const StructureConstants& sc,
                                                     const std::vector<TensorField>& casimirs, const Point& p);

struct ParametricSurface {
  int parameters = 2;
  std::function<Point(const std::vector<double>&)> map;
  /// Columns are d map / d s_k. Central differences are used when empty.
  std::function<Matrix(const std::vector<double>&)> tangents;
};

/// Residual at each sample: the largest 2-norm of a tangent's component
/// outside span(frame), by least squares. Throws DegeneracyError when the
/// frame is rank deficient.
ConditionReport verify_integral_surface(const ParametricSurface& surface,
                                        const std::function<Matrix(const Point&)>& frame,
                                        const std::vector<std::vector<double>>& samples, double tolerance);

}  // namespace poisson_ortho
