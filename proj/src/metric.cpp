#include "poisson_ortho/metric.hpp"

#include <cmath>
#include <stdexcept>

#include "poisson_ortho/errors.hpp"

namespace poisson_ortho {

MetricField::MetricField(TensorField g) : g_(std::move(g)) {
  if (g_.slots() != std::vector<Slot>{Slot::Lower, Slot::Lower}) {
    throw std::invalid_argument("metric field must have two lower slots");
  }
}

MetricField MetricField::constant(const Matrix& covariant) {
  const int n = static_cast<int>(covariant.rows());
  if (covariant.cols() != n) throw std::invalid_argument("metric matrix must be square");
  return MetricField(TensorField::constant(n, {Slot::Lower, Slot::Lower}, to_components(covariant)));
}

MetricField MetricField::from_contravariant(const Matrix& contravariant) {
  Eigen::FullPivLU<Matrix> lu(contravariant);
  if (!lu.isInvertible()) throw std::invalid_argument("contravariant metric matrix is singular");
  return constant(lu.inverse());
}

Matrix MetricField::at(const Point& p) const {
  Matrix g = to_matrix(g_(p), dim());
  const double scale = max_abs(g);
  if (max_abs(Matrix(g - g.transpose())) > 1e-12 * scale) throw EvaluationError("metric is not symmetric", p);
  return g;
}

Matrix inverse_metric(const MetricField& m, const Point& p) {
  const Matrix g = m.at(p);
  const double scale = max_abs(g);
  const double det = g.determinant();
  if (scale == 0.0 || std::abs(det) < 1e-12 * std::pow(scale, m.dim())) {
    throw DegeneracyError("degenerate metric", p, condition_number(g));
  }
  return g.inverse();
}

MatrixList metric_partials(const MetricField& m, const Point& p, const DerivativeScheme& scheme) {
  MatrixList dg;
  dg.reserve(static_cast<std::size_t>(m.dim()));
  for (int a = 0; a < m.dim(); ++a) dg.push_back(to_matrix(partial_derivative(m.tensor(), p, a, scheme), m.dim()));
  return dg;
}

Christoffel christoffel(const Matrix& g_inv, const MatrixList& dg) {
  const int n = static_cast<int>(g_inv.rows());
  Christoffel gamma(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        gamma.first(a, b, c) = 0.5 * (dg[b](a, c) + dg[c](a, b) - dg[a](b, c));
  for (int s = 0; s < n; ++s)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        double v = 0.0;
        for (int a = 0; a < n; ++a) v += g_inv(s, a) * gamma.first(a, b, c);
        gamma.second(s, b, c) = v;
        gamma.second(s, c, b) = v;
      }
  return gamma;
}

Christoffel christoffel(const MetricField& m, const Point& p, const DerivativeScheme& scheme) {
  return christoffel(inverse_metric(m, p), metric_partials(m, p, scheme));
}

Matrix covariant_derivative_oneform(const Christoffel& gamma, const Vector& w, const std::vector<Components>& dw) {
  const int n = gamma.dim();
  Matrix out(n, n);
  for (int l = 0; l < n; ++l)
    for (int s = 0; s < n; ++s) {
      double v = dw[static_cast<std::size_t>(l)][static_cast<std::size_t>(s)];
      for (int c = 0; c < n; ++c) v -= gamma.second(c, l, s) * w(c);
      out(l, s) = v;
    }
  return out;
}

Matrix covariant_derivative_oneform(const MetricField& m, const TensorField& w, const Point& p,
                                    const DerivativeScheme& scheme) {
  if (!w.is_one_form() || w.dim() != m.dim()) throw std::invalid_argument("expected a one-form of the metric's dimension");
  return covariant_derivative_oneform(christoffel(m, p, scheme), to_vector(w(p)), partial_derivatives(w, p, scheme));
}

Matrix covariant_derivative_vector(const Christoffel& gamma, const Vector& x, const std::vector<Components>& dx) {
  const int n = gamma.dim();
  Matrix out(n, n);
  for (int l = 0; l < n; ++l)
    for (int c = 0; c < n; ++c) {
      double v = dx[static_cast<std::size_t>(l)][static_cast<std::size_t>(c)];
      for (int k = 0; k < n; ++k) v += gamma.second(c, l, k) * x(k);
      out(l, c) = v;
    }
  return out;
}

Matrix covariant_derivative_vector(const MetricField& m, const TensorField& x, const Point& p,
                                   const DerivativeScheme& scheme) {
  if (!x.is_vector() || x.dim() != m.dim()) throw std::invalid_argument("expected a vector field of the metric's dimension");
  return covariant_derivative_vector(christoffel(m, p, scheme), to_vector(x(p)), partial_derivatives(x, p, scheme));
}

MatrixList covariant_derivative_bivector(const Christoffel& gamma, const Matrix& bivector,
                                         const std::vector<Components>& d_bivector) {
  const int n = gamma.dim();
  MatrixList out;
  out.reserve(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    Matrix d = to_matrix(d_bivector[static_cast<std::size_t>(l)], n);
    for (int t = 0; t < n; ++t)
      for (int s = 0; s < n; ++s) {
        double v = d(t, s);
        for (int k = 0; k < n; ++k) v += gamma.second(t, l, k) * bivector(k, s) + gamma.second(s, l, k) * bivector(t, k);
        d(t, s) = v;
      }
    out.push_back(std::move(d));
  }
  return out;
}

MatrixList covariant_derivative_bivector(const MetricField& m, const TensorField& bivector, const Point& p,
                                         const DerivativeScheme& scheme) {
  if (bivector.slots() != std::vector<Slot>{Slot::Upper, Slot::Upper} || bivector.dim() != m.dim()) {
    throw std::invalid_argument("expected a bivector field of the metric's dimension");
  }
  return covariant_derivative_bivector(christoffel(m, p, scheme), to_matrix(bivector(p), m.dim()),
                                       partial_derivatives(bivector, p, scheme));
}

MatrixList covariant_derivative_constant_bivector(const Christoffel& gamma, const Matrix& bivector) {
  const int n = gamma.dim();
  MatrixList out;
  out.reserve(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    Matrix d = Matrix::Zero(n, n);
    for (int t = 0; t < n; ++t)
      for (int s = 0; s < n; ++s) {
        double v = 0.0;
        for (int j = 0; j < n; ++j) v += bivector(j, s) * gamma.second(t, j, l) - bivector(j, t) * gamma.second(s, j, l);
        d(t, s) = v;
      }
    out.push_back(std::move(d));
  }
  return out;
}

Vector sharp(const MetricField& m, const Vector& w, const Point& p) { return inverse_metric(m, p) * w; }

Vector flat(const MetricField& m, const Vector& x, const Point& p) { return m.at(p) * x; }

TensorField sharp_field(const MetricField& m, const TensorField& w) {
  if (!w.is_one_form() || w.dim() != m.dim()) throw std::invalid_argument("expected a one-form of the metric's dimension");
  auto eval = [m, w](const Point& p) { return to_components(Vector(sharp(m, to_vector(w(p)), p))); };
  TensorField::DerivativeFactory derivative;
  if (m.tensor().has_exact_derivative() && w.has_exact_derivative()) {
    // d(g^-1 w) = -g^-1 (dg) g^-1 w + g^-1 dw
    derivative = [m, w](int axis) {
      const TensorField dg = m.tensor().exact_derivative(axis);
      const TensorField dw = w.exact_derivative(axis);
      auto d_eval = [m, w, dg, dw](const Point& p) {
        const Matrix g_inv = inverse_metric(m, p);
        const Vector wv = to_vector(w(p));
        const Vector v = -g_inv * to_matrix(dg(p), m.dim()) * g_inv * wv + g_inv * to_vector(dw(p));
        return to_components(v);
      };
      return TensorField(m.dim(), {Slot::Upper}, d_eval);
    };
  }
  return TensorField(m.dim(), {Slot::Upper}, eval, derivative);
}

Matrix lie_derivative_metric(const MetricField& m, const TensorField& x, const Point& p,
                             const DerivativeScheme& scheme) {
  const Matrix g = m.at(p);
  const Matrix nabla_x = covariant_derivative_vector(m, x, p, scheme);  // (s, c)
  // g_{c l} nabla_s X^c + g_{s c} nabla_l X^c
  const Matrix half = nabla_x * g;
  return half + half.transpose();
}

double laplacian_casimir(const MetricField& m, const TensorField& c, const Point& p, const DerivativeScheme& scheme) {
  if (!c.is_scalar()) throw std::invalid_argument("laplacian needs a scalar field");
  const TensorField gradient = sharp_field(m, differential(c, scheme));
  const Matrix lie = lie_derivative_metric(m, gradient, p, scheme);
  return 0.5 * (inverse_metric(m, p).cwiseProduct(lie)).sum();
}

}  // namespace poisson_ortho
