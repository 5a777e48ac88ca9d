#pragma once

#include <vector>

#include "poisson_ortho/condition_report.hpp"
#include "poisson_ortho/derivative.hpp"
#include "poisson_ortho/linalg.hpp"
#include "poisson_ortho/metric.hpp"
#include "poisson_ortho/tensor_field.hpp"

namespace poisson_ortho {

/// Regular Poisson bivector together with analytic Casimirs c^i.
///
/// The Casimir coframe is omega^i = s_i dc^i, where s_i is the i-th entry of
/// `coframe_scales` (1 when the list is empty).
struct PoissonStructure {
  TensorField bivector;
  std::vector<TensorField> casimirs;
  std::vector<TensorField> coframe_scales;
  int expected_rank = 0;

  int dim() const { return bivector.dim(); }
  int codim() const { return static_cast<int>(casimirs.size()); }
  /// Shape checks only: slot types, dimensions, d + k = n.
  void check_shape() const;
};

struct PoissonValidation {
  ConditionReport antisymmetry;
  ConditionReport jacobi;
  ConditionReport casimir_annihilation;
  /// Residual |rank(P) - expected_rank| per point.
  ConditionReport rank;
  std::vector<int> ranks;
};

/// Antisymmetry, Jacobi identity, constant rank and P dc^i = 0 over the grid.
/// Throws RegularityError when the rank changes between two grid points.
PoissonValidation validate_poisson(const PoissonStructure& ps, const Grid& grid, const DerivativeScheme& scheme,
                                   double tolerance = 1e-9);

/// Jacobiator sum_l (P^{l m} d_l P^{n s} + P^{l n} d_l P^{s m} + P^{l s} d_l P^{m n}), max-abs.
double jacobi_residual(const TensorField& bivector, const Point& p, const DerivativeScheme& scheme);

/// One-form fields omega^i.
std::vector<TensorField> coframe_fields(const PoissonStructure& ps, const DerivativeScheme& scheme);

/// Values omega^i(p). Throws DegeneracyError if they are linearly dependent.
std::vector<Vector> casimir_coframe(const PoissonStructure& ps, const Point& p, const DerivativeScheme& scheme);

/// Vector fields xi_i = (omega^i)^sharp.
std::vector<TensorField> frame_fields(const PoissonStructure& ps, const MetricField& m, const DerivativeScheme& scheme);

struct DistributionFrame {
  /// Columns xi_i.
  Matrix vectors;
  /// Columns omega^i.
  Matrix covectors;
  /// g(xi_i, xi_j).
  Matrix gram;
};

/// Frame of the orthogonal distribution at p. Throws DegeneracyError when the
/// Gram matrix of the frame is singular.
DistributionFrame orthogonal_frame(const PoissonStructure& ps, const MetricField& m, const Point& p,
                                   const DerivativeScheme& scheme);

/// A^t_m = P^{t s} g_{s m}.
Matrix a_tensor(const PoissonStructure& ps, const MetricField& m, const Point& p);

/// Indices of k linearly independent columns of P, chosen greedily left to right.
std::vector<int> leaf_pivots(const Matrix& bivector, int rank);

/// Leaf tangent basis: the pivot columns of P at p.
Matrix leaf_basis(const PoissonStructure& ps, const Point& p);

struct Projectors {
  /// g-orthogonal projection onto the leaf tangent.
  Matrix v;
  /// g-orthogonal projection onto the orthogonal distribution.
  Matrix h;
};

/// Throws DegeneracyError when the metric restricted to the leaf or to the
/// orthogonal distribution is singular.
Projectors projectors(const PoissonStructure& ps, const MetricField& m, const Point& p,
                      const DerivativeScheme& scheme);

/// v or h as a (1,1) tensor field, for use inside brackets.
TensorField projector_field(const PoissonStructure& ps, const MetricField& m, const DerivativeScheme& scheme,
                            bool vertical);

/// Smallest singular value of [xi_1 .. xi_d | leaf basis].
double frame_completeness(const PoissonStructure& ps, const MetricField& m, const Point& p,
                          const DerivativeScheme& scheme);

/// Vector field whose value is column `column` of P.
TensorField bivector_column(const TensorField& bivector, int column);

}  // namespace poisson_ortho
