#include "poisson_ortho/derivative.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poisson_ortho {

void DerivativeScheme::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("derivative step must be positive");
}

std::string DerivativeScheme::name() const {
  switch (kind) {
    case Kind::Central2: return "central2";
    case Kind::Central4: return "central4";
    case Kind::Symbolic: return "symbolic";
  }
  return "symbolic";
}

DerivativeScheme DerivativeScheme::parse(const std::string& name, double step) {
  DerivativeScheme s;
  s.step = step;
  if (name == "central2") s.kind = Kind::Central2;
  else if (name == "central4") s.kind = Kind::Central4;
  else if (name == "symbolic") s.kind = Kind::Symbolic;
  else throw std::invalid_argument("unknown derivative scheme '" + name + "'");
  s.validate();
  return s;
}

Components partial_derivative(const TensorField& field, const Point& p, int axis,
                              const DerivativeScheme& scheme) {
  if (axis < 0 || axis >= field.dim()) throw std::out_of_range("derivative axis out of range");
  if (scheme.kind == DerivativeScheme::Kind::Symbolic && field.has_exact_derivative()) {
    return field.exact_derivative(axis)(p);
  }
  scheme.validate();
  const double h = scheme.step * std::max(1.0, std::abs(p[static_cast<std::size_t>(axis)]));
  const std::size_t n = field.size();
  Components out(n);

  if (scheme.kind == DerivativeScheme::Kind::Central2) {
    const Components fp = field(p.shifted(axis, h));
    const Components fm = field(p.shifted(axis, -h));
    for (std::size_t i = 0; i < n; ++i) out[i] = (fp[i] - fm[i]) / (2.0 * h);
    return out;
  }

  const Components fm2 = field(p.shifted(axis, -2.0 * h));
  const Components fm1 = field(p.shifted(axis, -h));
  const Components fp1 = field(p.shifted(axis, h));
  const Components fp2 = field(p.shifted(axis, 2.0 * h));
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (fm2[i] - 8.0 * fm1[i] + 8.0 * fp1[i] - fp2[i]) / (12.0 * h);
  }
  return out;
}

std::vector<Components> partial_derivatives(const TensorField& field, const Point& p,
                                            const DerivativeScheme& scheme) {
  std::vector<Components> out;
  out.reserve(static_cast<std::size_t>(field.dim()));
  for (int a = 0; a < field.dim(); ++a) out.push_back(partial_derivative(field, p, a, scheme));
  return out;
}

Components lie_bracket(const TensorField& x, const TensorField& y, const Point& p,
                       const DerivativeScheme& scheme) {
  if (!x.is_vector() || !y.is_vector()) throw std::invalid_argument("lie_bracket needs two vector fields");
  if (x.dim() != y.dim()) throw std::invalid_argument("lie_bracket: dimension mismatch");
  const auto n = static_cast<std::size_t>(x.dim());
  const Components xv = x(p);
  const Components yv = y(p);
  Components out(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    if (xv[l] != 0.0) {
      const Components dy = partial_derivative(y, p, static_cast<int>(l), scheme);
      for (std::size_t m = 0; m < n; ++m) out[m] += xv[l] * dy[m];
    }
    if (yv[l] != 0.0) {
      const Components dx = partial_derivative(x, p, static_cast<int>(l), scheme);
      for (std::size_t m = 0; m < n; ++m) out[m] -= yv[l] * dx[m];
    }
  }
  return out;
}

namespace {

// Gradient of an exact scalar field: components are its exact partials, and
// the derivative of the gradient is the gradient of the derivative.
TensorField exact_differential(const TensorField& scalar) {
  const int n = scalar.dim();
  std::vector<TensorField> partials;
  partials.reserve(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) partials.push_back(scalar.exact_derivative(a));
  auto eval = [partials](const Point& p) {
    Components c;
    c.reserve(partials.size());
    for (const auto& f : partials) c.push_back(f(p)[0]);
    return c;
  };
  auto derivative = [partials](int axis) {
    return exact_differential(partials[static_cast<std::size_t>(axis)]);
  };
  return TensorField(n, {Slot::Lower}, eval, derivative);
}

}  // namespace

TensorField sum(const TensorField& a, const TensorField& b) {
  auto eval = [a, b](const Point& p) {
    Components x = a(p);
    const Components y = b(p);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return x;
  };
  TensorField::DerivativeFactory derivative;
  if (a.has_exact_derivative() && b.has_exact_derivative()) {
    derivative = [a, b](int axis) { return sum(a.exact_derivative(axis), b.exact_derivative(axis)); };
  }
  return TensorField(a.dim(), a.slots(), eval, derivative);
}

TensorField scaled(const TensorField& scalar, const TensorField& field) {
  if (!scalar.is_scalar()) throw std::invalid_argument("scaled needs a scalar factor");
  if (scalar.dim() != field.dim()) throw std::invalid_argument("scaled: dimension mismatch");
  auto eval = [scalar, field](const Point& p) {
    const double s = scalar(p)[0];
    Components c = field(p);
    for (double& v : c) v *= s;
    return c;
  };
  TensorField::DerivativeFactory derivative;
  if (scalar.has_exact_derivative() && field.has_exact_derivative()) {
    derivative = [scalar, field](int axis) {
      const TensorField ds = scalar.exact_derivative(axis);
      const TensorField df = field.exact_derivative(axis);
      const TensorField first = scaled(ds, field);
      const TensorField second = scaled(scalar, df);
      return sum(first, second);
    };
  }
  return TensorField(field.dim(), field.slots(), eval, derivative);
}

TensorField differential(const TensorField& scalar, const DerivativeScheme& scheme) {
  if (!scalar.is_scalar()) throw std::invalid_argument("differential needs a scalar field");
  if (scheme.kind == DerivativeScheme::Kind::Symbolic && scalar.has_exact_derivative()) {
    return exact_differential(scalar);
  }
  auto eval = [scalar, scheme](const Point& p) {
    Components c;
    c.reserve(static_cast<std::size_t>(scalar.dim()));
    for (int a = 0; a < scalar.dim(); ++a) c.push_back(partial_derivative(scalar, p, a, scheme)[0]);
    return c;
  };
  return TensorField(scalar.dim(), {Slot::Lower}, eval);
}

}  // namespace poisson_ortho
