#pragma once

#include <vector>

#include "poisson_ortho/derivative.hpp"
#include "poisson_ortho/linalg.hpp"
#include "poisson_ortho/tensor_field.hpp"

namespace poisson_ortho {

/// Symmetric, nondegenerate covariant 2-tensor field g_{mu nu}.
class MetricField {
 public:
  explicit MetricField(TensorField g);

  static MetricField constant(const Matrix& covariant);
  /// Constant metric given by its contravariant matrix g^{mu nu}; the
  /// covariant field is the matrix inverse.
  static MetricField from_contravariant(const Matrix& contravariant);

  int dim() const { return g_.dim(); }
  const TensorField& tensor() const { return g_; }

  /// Covariant components at p. Throws if the matrix is not symmetric.
  Matrix at(const Point& p) const;

 private:
  TensorField g_;
};

/// Christoffel symbols at a point, stored as dim^3 arrays.
class Christoffel {
 public:
  explicit Christoffel(int dim)
      : dim_(dim),
        first_(static_cast<std::size_t>(dim * dim * dim), 0.0),
        second_(static_cast<std::size_t>(dim * dim * dim), 0.0) {}

  int dim() const { return dim_; }
  /// Gamma_{a b c} = g_{a s} Gamma^s_{b c}.
  double first(int a, int b, int c) const { return first_[index(a, b, c)]; }
  /// Gamma^s_{b c}.
  double second(int s, int b, int c) const { return second_[index(s, b, c)]; }
  double& first(int a, int b, int c) { return first_[index(a, b, c)]; }
  double& second(int s, int b, int c) { return second_[index(s, b, c)]; }

 private:
  std::size_t index(int a, int b, int c) const { return static_cast<std::size_t>((a * dim_ + b) * dim_ + c); }
  int dim_;
  std::vector<double> first_;
  std::vector<double> second_;
};

/// Per-axis slices: result[l] is a matrix indexed (tau, sigma).
using MatrixList = std::vector<Matrix>;

/// g^{mu nu}. Throws DegeneracyError when |det g| < 1e-12 (max|g|)^dim.
Matrix inverse_metric(const MetricField& m, const Point& p);

/// Partials d_l g_{mu nu}, one matrix per axis.
MatrixList metric_partials(const MetricField& m, const Point& p, const DerivativeScheme& scheme);

Christoffel christoffel(const MetricField& m, const Point& p, const DerivativeScheme& scheme);
/// Same, from precomputed metric data.
Christoffel christoffel(const Matrix& g_inv, const MatrixList& dg);

/// (nabla_l w)_s = d_l w_s - Gamma^c_{l s} w_c, indexed (l, s).
Matrix covariant_derivative_oneform(const MetricField& m, const TensorField& w, const Point& p,
                                    const DerivativeScheme& scheme);
Matrix covariant_derivative_oneform(const Christoffel& gamma, const Vector& w, const std::vector<Components>& dw);

/// (nabla_l X)^c = d_l X^c + Gamma^c_{l m} X^m, indexed (l, c).
Matrix covariant_derivative_vector(const MetricField& m, const TensorField& x, const Point& p,
                                   const DerivativeScheme& scheme);
Matrix covariant_derivative_vector(const Christoffel& gamma, const Vector& x, const std::vector<Components>& dx);

/// (nabla_l P)^{t s} = d_l P^{t s} + Gamma^t_{l m} P^{m s} + Gamma^s_{l m} P^{t m}.
MatrixList covariant_derivative_bivector(const MetricField& m, const TensorField& bivector, const Point& p,
                                         const DerivativeScheme& scheme);
MatrixList covariant_derivative_bivector(const Christoffel& gamma, const Matrix& bivector,
                                         const std::vector<Components>& d_bivector);

/// Reduced form for a constant antisymmetric P:
/// (nabla_l P)^{t s} = P^{j s} Gamma^t_{j l} - P^{j t} Gamma^s_{j l}.
MatrixList covariant_derivative_constant_bivector(const Christoffel& gamma, const Matrix& bivector);

Vector sharp(const MetricField& m, const Vector& w, const Point& p);
Vector flat(const MetricField& m, const Vector& x, const Point& p);

/// Vector field w^sharp. Its exact derivative is available when both the
/// metric and the one-form have exact derivatives.
TensorField sharp_field(const MetricField& m, const TensorField& w);

/// (L_X g)_{s l} = g_{c l} nabla_s X^c + g_{s c} nabla_l X^c.
Matrix lie_derivative_metric(const MetricField& m, const TensorField& x, const Point& p,
                             const DerivativeScheme& scheme);

/// Laplace-Beltrami of a scalar, as (1/2) g^{l m} (L_{(dc)^sharp} g)_{l m}.
double laplacian_casimir(const MetricField& m, const TensorField& c, const Point& p,
                         const DerivativeScheme& scheme);

}  // namespace poisson_ortho
