#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poisson_ortho/condition_report.hpp"
#include "poisson_ortho/derivative.hpp"
#include "poisson_ortho/linalg.hpp"
#include "poisson_ortho/metric.hpp"
#include "poisson_ortho/poisson.hpp"

namespace poisson_ortho {

/// 1e-6 with exact derivatives, 1e-4 with finite differences only.
double default_tolerance(const DerivativeScheme& scheme);

/// The field J X for a (1,1) tensor field J and a vector field X.
TensorField apply(const TensorField& j, const TensorField& x);

/// v([h gamma, h eta]).
Vector frobenius_curvature(const PoissonStructure& ps, const MetricField& m, const TensorField& gamma,
                           const TensorField& eta, const Point& p, const DerivativeScheme& scheme);

/// N_J(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] + J^2[X,Y].
Vector nijenhuis_torsion(const TensorField& j, const TensorField& x, const TensorField& y, const Point& p,
                         const DerivativeScheme& scheme);

/// Max-abs residuals of the four equivalent conditions, over pairs i < j.
struct Theorem1Residuals {
  /// P^{ts} (nabla_{xi_i} omega^j - nabla_{xi_j} omega^i)_s
  double c2 = 0.0;
  /// g^{la} (nabla_l P)^{ts} (omega^i ^ omega^j)_{as}
  double c3 = 0.0;
  /// P^{ts} g_{sl} (nabla_{xi_i} xi_j - nabla_{xi_j} xi_i)^l
  double c4 = 0.0;
  /// P [omega^i, omega^j]_g
  double c5 = 0.0;
};

Theorem1Residuals theorem1_residuals(const PoissonStructure& ps, const MetricField& m, const Point& p,
                                     const DerivativeScheme& scheme);

/// Sufficient conditions; each is zero only if the distribution is integrable.
struct CorollaryResiduals {
  /// (nabla_{xi_i} P) omega^j, all i, j.
  double parallel_bivector = 0.0;
  /// omega^j (nabla_{xi_i} t_a) over a leaf basis t_a.
  double leaf_preserved = 0.0;
  /// nabla omega^i.
  double parallel_coframe = 0.0;
  /// L_{xi_i} g.
  double killing = 0.0;
  /// Laplacian of c^i.
  double laplacian = 0.0;
};

CorollaryResiduals corollary_checks(const PoissonStructure& ps, const MetricField& m, const Point& p,
                                    const DerivativeScheme& scheme);

/// Number of transversal coordinates if P at p is the constant block matrix
/// diag(0_p, [[0,-I],[I,0]]) or its negative; nothing otherwise.
std::optional<int> dw_transversal_count(const PoissonStructure& ps, const Point& p, const DerivativeScheme& scheme);

/// max over transversal I < J and leaf t of |Gamma_{JIt} - Gamma_{IJt}|.
/// Throws PreconditionError if P is not in block form at p.
double dw_symmetry(const PoissonStructure& ps, const MetricField& m, const Point& p, const DerivativeScheme& scheme);

/// Everything computed at one grid point.
struct PointEvaluation {
  Point point;
  Theorem1Residuals theorem1;
  /// max over pairs of |v[h xi_i, h xi_j]|, and the vector attaining it.
  double frobenius = 0.0;
  Vector frobenius_vector;
  /// max over pairs of |N_v(xi_i, xi_j)|.
  double nijenhuis = 0.0;
  /// max over pairs of |A[xi_i, xi_j]|.
  double a_bracket = 0.0;
  CorollaryResiduals corollaries;
  std::optional<double> dw;
  Matrix gram;
};

PointEvaluation evaluate_point(const PoissonStructure& ps, const MetricField& m, const Point& p,
                               const DerivativeScheme& scheme, bool with_dw);

struct Verdict {
  bool integrable = true;
  /// All conditions agree pointwise, and no sufficient condition holds at a
  /// point where the conditions fail.
  bool consistent = true;
  std::vector<std::string> inconsistencies;
  /// c2, c3, c4, c5, frobenius, nijenhuis, a_bracket.
  std::vector<ConditionReport> conditions;
  std::vector<ConditionReport> corollaries;
  /// Residual 1 where |A[xi_i,xi_j]| and |N_v| disagree on vanishing.
  ConditionReport theorem2;
  std::optional<ConditionReport> dw;
  /// DW verdict matches the condition verdict at every point.
  bool dw_agrees = true;
  std::vector<PointEvaluation> evaluations;

  const ConditionReport& condition(const std::string& id) const;
};

/// Evaluates every criterion over the grid. Points are processed in parallel,
/// capped by POISSON_ORTHO_THREADS (0 or unset: hardware concurrency).
Verdict evaluate_verdict(const PoissonStructure& ps, const MetricField& m, const Grid& grid,
                         const DerivativeScheme& scheme, double tolerance);

/// Same, but throws InvalidRunError when the conditions disagree.
Verdict verdict(const PoissonStructure& ps, const MetricField& m, const Grid& grid, const DerivativeScheme& scheme,
                double tolerance);

/// Worker count from POISSON_ORTHO_THREADS.
unsigned thread_count();

}  // namespace poisson_ortho
