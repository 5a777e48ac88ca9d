#pragma once

#include <string>
#include <vector>

#include "poisson_ortho/point.hpp"
#include "poisson_ortho/tensor_field.hpp"

namespace poisson_ortho {

struct DerivativeScheme {
  enum class Kind { Central2, Central4, Symbolic };

  /// Symbolic uses exact derivatives where a field provides them and falls
  /// back to 4th-order central differences otherwise.
  Kind kind = Kind::Symbolic;
  /// Relative step; the absolute step on axis a is step * max(1, |x_a|).
  double step = 1e-5;

  void validate() const;
  std::string name() const;
  static DerivativeScheme parse(const std::string& name, double step = 1e-5);
};

/// Partial derivative of every component of `field` along `axis` (0-based).
Components partial_derivative(const TensorField& field, const Point& p, int axis,
                              const DerivativeScheme& scheme);

/// All partials: result[axis] = partial_derivative(field, p, axis, scheme).
std::vector<Components> partial_derivatives(const TensorField& field, const Point& p,
                                            const DerivativeScheme& scheme);

/// [X,Y]^mu = X^l d_l Y^mu - Y^l d_l X^mu.
Components lie_bracket(const TensorField& x, const TensorField& y, const Point& p,
                       const DerivativeScheme& scheme);

/// Componentwise a + b. Exact when both are exact.
TensorField sum(const TensorField& a, const TensorField& b);

/// Pointwise product s * F of a scalar field and a tensor field. Exact when
/// both factors are exact.
TensorField scaled(const TensorField& scalar, const TensorField& field);

/// The one-form dc of a scalar field. Exact when `scalar` is exact.
TensorField differential(const TensorField& scalar, const DerivativeScheme& scheme);

}  // namespace poisson_ortho
