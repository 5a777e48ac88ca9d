#include "poisson_ortho/poisson.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "poisson_ortho/errors.hpp"

namespace poisson_ortho {

namespace {

bool degenerate(const Matrix& m) {
  const double scale = max_abs(m);
  return scale == 0.0 || std::abs(m.determinant()) < 1e-12 * std::pow(scale, static_cast<double>(m.rows()));
}

Matrix bivector_at(const PoissonStructure& ps, const Point& p) { return to_matrix(ps.bivector(p), ps.dim()); }

}  // namespace

void PoissonStructure::check_shape() const {
  if (bivector.slots() != std::vector<Slot>{Slot::Upper, Slot::Upper}) {
    throw std::invalid_argument("Poisson tensor must have two upper slots");
  }
  if (expected_rank < 0 || expected_rank % 2 != 0) throw std::invalid_argument("Poisson rank must be even");
  if (codim() + expected_rank != dim()) {
    throw std::invalid_argument("number of Casimirs plus rank must equal the dimension");
  }
  for (const auto& c : casimirs) {
    if (!c.is_scalar() || c.dim() != dim()) throw std::invalid_argument("Casimirs must be scalar fields on the chart");
  }
  if (!coframe_scales.empty() && coframe_scales.size() != casimirs.size()) {
    throw std::invalid_argument("one coframe scale per Casimir is required");
  }
  for (const auto& s : coframe_scales) {
    if (!s.is_scalar() || s.dim() != dim()) throw std::invalid_argument("coframe scales must be scalar fields");
  }
}

double jacobi_residual(const TensorField& bivector, const Point& p, const DerivativeScheme& scheme) {
  const int n = bivector.dim();
  const Matrix P = to_matrix(bivector(p), n);
  MatrixList dP;
  for (int l = 0; l < n; ++l) dP.push_back(to_matrix(partial_derivative(bivector, p, l, scheme), n));
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double v = 0.0;
        for (int l = 0; l < n; ++l) v += P(l, a) * dP[l](b, c) + P(l, b) * dP[l](c, a) + P(l, c) * dP[l](a, b);
        worst = std::max(worst, std::abs(v));
      }
  return worst;
}

PoissonValidation validate_poisson(const PoissonStructure& ps, const Grid& grid, const DerivativeScheme& scheme,
                                   double tolerance) {
  ps.check_shape();
  grid.validate();
  const std::vector<Point> points = sample(grid);
  std::vector<TensorField> differentials;
  for (const auto& c : ps.casimirs) differentials.push_back(differential(c, scheme));

  std::vector<double> antisym, jacobi, annihilation, rank_gap;
  std::vector<int> ranks;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    const Matrix P = bivector_at(ps, p);
    antisym.push_back(max_abs(Matrix(P + P.transpose())));
    jacobi.push_back(jacobi_residual(ps.bivector, p, scheme));
    double worst = 0.0;
    for (const auto& dc : differentials) worst = std::max(worst, max_abs(Vector(P * to_vector(dc(p)))));
    annihilation.push_back(worst);
    const int r = numerical_rank(P);
    if (!ranks.empty() && r != ranks.front()) {
      throw RegularityError("Poisson rank changes from " + std::to_string(ranks.front()) + " to " +
                                std::to_string(r),
                            points.front(), p);
    }
    ranks.push_back(r);
    rank_gap.push_back(std::abs(r - ps.expected_rank));
  }
  return PoissonValidation{
      ConditionReport::from_residuals("antisymmetry", "P + P^T", points, antisym, tolerance),
      ConditionReport::from_residuals("jacobi", "Jacobiator of P", points, jacobi, tolerance),
      ConditionReport::from_residuals("casimir", "P dc^i", points, annihilation, tolerance),
      ConditionReport::from_residuals("rank", "|rank P - k|", points, rank_gap, 0.0),
      ranks,
  };
}

std::vector<TensorField> coframe_fields(const PoissonStructure& ps, const DerivativeScheme& scheme) {
  std::vector<TensorField> out;
  for (std::size_t i = 0; i < ps.casimirs.size(); ++i) {
    TensorField w = differential(ps.casimirs[i], scheme);
    if (!ps.coframe_scales.empty()) w = scaled(ps.coframe_scales[i], w);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<Vector> casimir_coframe(const PoissonStructure& ps, const Point& p, const DerivativeScheme& scheme) {
  std::vector<Vector> out;
  Matrix stacked(ps.dim(), ps.codim());
  int col = 0;
  for (const auto& w : coframe_fields(ps, scheme)) {
    out.push_back(to_vector(w(p)));
    stacked.col(col++) = out.back();
  }
  if (ps.codim() > 0 && numerical_rank(stacked) < ps.codim()) {
    throw DegeneracyError("Casimir differentials are linearly dependent", p, condition_number(stacked));
  }
  return out;
}

std::vector<TensorField> frame_fields(const PoissonStructure& ps, const MetricField& m,
                                      const DerivativeScheme& scheme) {
  std::vector<TensorField> out;
  for (const auto& w : coframe_fields(ps, scheme)) out.push_back(sharp_field(m, w));
  return out;
}

DistributionFrame orthogonal_frame(const PoissonStructure& ps, const MetricField& m, const Point& p,
                                   const DerivativeScheme& scheme) {
  const std::vector<Vector> coframe = casimir_coframe(ps, p, scheme);
  const Matrix g_inv = inverse_metric(m, p);
  DistributionFrame f;
  f.covectors.resize(ps.dim(), ps.codim());
  for (int i = 0; i < ps.codim(); ++i) f.covectors.col(i) = coframe[static_cast<std::size_t>(i)];
  f.vectors = g_inv * f.covectors;
  const Matrix gram = f.covectors.transpose() * f.vectors;
  f.gram = 0.5 * (gram + gram.transpose());
  if (ps.codim() > 0 && degenerate(f.gram)) {
    throw DegeneracyError("metric restricted to the orthogonal distribution is degenerate", p,
                          condition_number(f.gram));
  }
  return f;
}

Matrix a_tensor(const PoissonStructure& ps, const MetricField& m, const Point& p) {
  return bivector_at(ps, p) * m.at(p);
}

std::vector<int> leaf_pivots(const Matrix& bivector, int rank) {
  std::vector<int> pivots;
  double scale = 0.0;
  for (Eigen::Index j = 0; j < bivector.cols(); ++j) scale = std::max(scale, bivector.col(j).norm());
  if (scale == 0.0) return pivots;
  Matrix q(bivector.rows(), 0);
  for (Eigen::Index j = 0; j < bivector.cols() && static_cast<int>(pivots.size()) < rank; ++j) {
    Vector r = bivector.col(j);
    for (int pass = 0; pass < 2; ++pass) r -= q * (q.transpose() * r);
    const double norm = r.norm();
    if (norm > 1e-9 * scale) {
      q.conservativeResize(Eigen::NoChange, q.cols() + 1);
      q.col(q.cols() - 1) = r / norm;
      pivots.push_back(static_cast<int>(j));
    }
  }
  return pivots;
}

Matrix leaf_basis(const PoissonStructure& ps, const Point& p) {
  const Matrix P = bivector_at(ps, p);
  const std::vector<int> pivots = leaf_pivots(P, ps.expected_rank);
  if (static_cast<int>(pivots.size()) < ps.expected_rank) {
    throw DegeneracyError("Poisson tensor has rank below " + std::to_string(ps.expected_rank), p,
                          condition_number(P));
  }
  Matrix b(ps.dim(), ps.expected_rank);
  for (int a = 0; a < ps.expected_rank; ++a) b.col(a) = P.col(pivots[static_cast<std::size_t>(a)]);
  return b;
}

Projectors projectors(const PoissonStructure& ps, const MetricField& m, const Point& p,
                      const DerivativeScheme& scheme) {
  const int n = ps.dim();
  const Matrix g = m.at(p);
  Projectors out;
  if (ps.expected_rank > 0) {
    const Matrix b = leaf_basis(ps, p);
    const Matrix leaf_gram = b.transpose() * g * b;
    if (degenerate(leaf_gram)) {
      throw DegeneracyError("metric restricted to the leaf is degenerate", p, condition_number(leaf_gram));
    }
    out.v = b * leaf_gram.inverse() * b.transpose() * g;
  } else {
    out.v = Matrix::Zero(n, n);
  }
  if (ps.codim() > 0) {
    const DistributionFrame f = orthogonal_frame(ps, m, p, scheme);
    out.h = f.vectors * f.gram.inverse() * f.covectors.transpose();
    out.v = Matrix::Identity(n, n) - out.h;
  } else {
    out.h = Matrix::Zero(n, n);
  }
  return out;
}

TensorField projector_field(const PoissonStructure& ps, const MetricField& m, const DerivativeScheme& scheme,
                            bool vertical) {
  auto eval = [ps, m, scheme, vertical](const Point& p) {
    const Projectors pr = projectors(ps, m, p, scheme);
    return to_components(vertical ? pr.v : pr.h);
  };
  return TensorField(ps.dim(), {Slot::Upper, Slot::Lower}, eval);
}

double frame_completeness(const PoissonStructure& ps, const MetricField& m, const Point& p,
                          const DerivativeScheme& scheme) {
  const DistributionFrame f = orthogonal_frame(ps, m, p, scheme);
  Matrix all(ps.dim(), ps.dim());
  all << f.vectors, leaf_basis(ps, p);
  Eigen::JacobiSVD<Matrix> svd(all);
  return svd.singularValues()(ps.dim() - 1);
}

TensorField bivector_column(const TensorField& bivector, int column) {
  const int n = bivector.dim();
  if (column < 0 || column >= n) throw std::out_of_range("bivector column out of range");
  auto eval = [bivector, column, n](const Point& p) {
    const Components c = bivector(p);
    Components out(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) out[static_cast<std::size_t>(r)] = c[static_cast<std::size_t>(r * n + column)];
    return out;
  };
  TensorField::DerivativeFactory derivative;
  if (bivector.has_exact_derivative()) {
    derivative = [bivector, column](int axis) { return bivector_column(bivector.exact_derivative(axis), column); };
  }
  return TensorField(n, {Slot::Upper}, eval, derivative);
}

}  // namespace poisson_ortho
