#include "poisson_ortho/lie_poisson.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "poisson_ortho/dsl_field.hpp"
#include "poisson_ortho/errors.hpp"

namespace poisson_ortho {

StructureConstants::StructureConstants(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("algebra dimension must be positive");
  c_.assign(static_cast<std::size_t>(dim * dim * dim), Rational(0));
}

void StructureConstants::set_bracket(int mu, int nu, int sigma, Rational value) {
  at(mu, nu, sigma) = value;
  at(nu, mu, sigma) = -value;
}

Vector StructureConstants::bracket(const Vector& a, const Vector& b) const {
  Vector out = Vector::Zero(dim_);
  for (int mu = 0; mu < dim_; ++mu)
    for (int nu = 0; nu < dim_; ++nu) {
      if (a(mu) == 0.0 || b(nu) == 0.0) continue;
      for (int s = 0; s < dim_; ++s) {
        const Rational& c = at(mu, nu, s);
        if (!c.is_zero()) out(s) += c.to_double() * a(mu) * b(nu);
      }
    }
  return out;
}

std::string ConstantsValidation::describe() const {
  std::ostringstream out;
  for (const auto& v : antisymmetry_violations) {
    out << "antisymmetry violated at (" << v[0] + 1 << "," << v[1] + 1 << "," << v[2] + 1 << ")\n";
  }
  for (const auto& v : jacobi_violations) {
    out << "Jacobi identity violated at (" << v[0] + 1 << "," << v[1] + 1 << "," << v[2] + 1 << "," << v[3] + 1
        << ")\n";
  }
  return out.str();
}

ConstantsValidation validate_constants(const StructureConstants& sc) {
  const int n = sc.dim();
  ConstantsValidation out;
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu; nu < n; ++nu)
      for (int s = 0; s < n; ++s) {
        if (!(sc.at(mu, nu, s) + sc.at(nu, mu, s)).is_zero()) out.antisymmetry_violations.push_back({mu, nu, s});
      }
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
          Rational sum;
          for (int r = 0; r < n; ++r) {
            sum += sc.at(mu, nu, r) * sc.at(r, s, t) + sc.at(nu, s, r) * sc.at(r, mu, t) +
                   sc.at(s, mu, r) * sc.at(r, nu, t);
          }
          if (!sum.is_zero()) out.jacobi_violations.push_back({mu, nu, s, t});
        }
  out.antisymmetric = out.antisymmetry_violations.empty();
  out.jacobi = out.jacobi_violations.empty();
  return out;
}

RationalMatrix killing_form(const StructureConstants& sc) {
  const int n = sc.dim();
  RationalMatrix k(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      Rational sum;
      for (int s = 0; s < n; ++s)
        for (int r = 0; r < n; ++r) sum += sc.at(mu, r, s) * sc.at(nu, s, r);
      k[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)] = sum;
    }
  return k;
}

Matrix to_matrix(const RationalMatrix& m) {
  const auto rows = static_cast<Eigen::Index>(m.size());
  const auto cols = rows ? static_cast<Eigen::Index>(m.front().size()) : 0;
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].to_double();
  return out;
}

Rational linear_jacobi_residual(const StructureConstants& sc) {
  const int n = sc.dim();
  Rational worst;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int s = 0; s < n; ++s) {
          Rational sum;
          for (int l = 0; l < n; ++l) {
            sum += sc.at(l, a, s) * sc.at(b, c, l) + sc.at(l, b, s) * sc.at(c, a, l) + sc.at(l, c, s) * sc.at(a, b, l);
          }
          if (worst < abs(sum)) worst = abs(sum);
        }
  return worst;
}

TensorField linear_poisson(const StructureConstants& sc) {
  const int n = sc.dim();
  std::vector<dsl::Expr> entries;
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      std::string text;
      for (int s = 0; s < n; ++s) {
        const Rational& c = sc.at(mu, nu, s);
        if (c.is_zero()) continue;
        if (!text.empty()) text += " + ";
        text += "(" + c.to_string() + ")*x" + std::to_string(s + 1);
      }
      entries.push_back(dsl::parse(text.empty() ? "0" : text, n));
    }
  return dsl::field(n, {Slot::Upper, Slot::Upper}, std::move(entries));
}

namespace {

void add_so3(StructureConstants& sc, int offset) {
  sc.set_bracket(offset + 0, offset + 1, offset + 2, 1);
  sc.set_bracket(offset + 1, offset + 2, offset + 0, 1);
  sc.set_bracket(offset + 2, offset + 0, offset + 1, 1);
}

double block_norm2(const Point& p, int offset) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += p[static_cast<std::size_t>(offset + i)] * p[static_cast<std::size_t>(offset + i)];
  return s;
}

}  // namespace

BuiltinAlgebra builtin_algebra(const std::string& name) {
  BuiltinAlgebra a;
  a.name = name;
  if (name == "so3") {
    a.constants = StructureConstants(3);
    add_so3(a.constants, 0);
    a.casimirs = {"x1^2 + x2^2 + x3^2"};
    a.contravariant_metric = -to_matrix(killing_form(a.constants));
    a.regular = [](const Point& p) { return block_norm2(p, 0) > 1e-9; };
    a.default_center = Point{0, 0, 1};
    a.rank = 2;
  } else if (name == "sl2r") {
    // Basis H, E, F with [H,E] = 2E, [H,F] = -2F, [E,F] = H.
    a.constants = StructureConstants(3);
    a.constants.set_bracket(0, 1, 1, 2);
    a.constants.set_bracket(0, 2, 2, -2);
    a.constants.set_bracket(1, 2, 0, 1);
    a.casimirs = {"x1^2/8 + x2*x3/2"};
    a.contravariant_metric = to_matrix(killing_form(a.constants));
    a.regular = [](const Point& p) {
      const double c = p[0] * p[0] / 8.0 + p[1] * p[2] / 2.0;
      const double grad = std::abs(p[0] / 4.0) + std::abs(p[2] / 2.0) + std::abs(p[1] / 2.0);
      return grad > 1e-9 && std::abs(c) > 1e-9;
    };
    a.default_center = Point{1, 0, 0};
    a.rank = 2;
  } else if (name == "so3xso3") {
    a.constants = StructureConstants(6);
    add_so3(a.constants, 0);
    add_so3(a.constants, 3);
    a.casimirs = {"x1^2 + x2^2 + x3^2", "x4^2 + x5^2 + x6^2"};
    a.contravariant_metric = -to_matrix(killing_form(a.constants));
    a.regular = [](const Point& p) { return block_norm2(p, 0) > 1e-9 && block_norm2(p, 3) > 1e-9; };
    a.default_center = Point{0, 0, 1, 0, 0, 1};
    a.rank = 4;
  } else if (name == "se3") {
    // Rotations e1..e3, translations e4..e6: [e_i,e_j] = eps e_k, [e_i,f_j] = eps f_k.
    a.constants = StructureConstants(6);
    add_so3(a.constants, 0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int k = 3 - i - j;
        if (i == j) continue;
        const Rational eps = ((j - i + 3) % 3 == 1) ? 1 : -1;
        a.constants.at(i, 3 + j, 3 + k) = eps;
        a.constants.at(3 + j, i, 3 + k) = -eps;
      }
    a.casimirs = {"x1*x4 + x2*x5 + x3*x6", "x4^2 + x5^2 + x6^2"};
    a.coframe_scales = {1.0, 0.5};
    a.contravariant_metric = se3_contravariant(0.0, 1.0);
    a.regular = [](const Point& p) { return block_norm2(p, 3) > 1e-9; };
    a.default_center = Point{1, 0, 0, 0, 1, 0};
    a.default_half_width = 0.25;
    a.rank = 4;
  } else {
    throw ConfigError("unknown algebra '" + name + "' (expected so3, sl2r, so3xso3 or se3)");
  }
  return a;
}

PoissonStructure lie_poisson_structure(const BuiltinAlgebra& algebra) {
  const int n = algebra.constants.dim();
  PoissonStructure ps{linear_poisson(algebra.constants), {}, {}, algebra.rank};
  for (const auto& text : algebra.casimirs) ps.casimirs.push_back(dsl::scalar_field(dsl::parse(text, n)));
  for (double s : algebra.coframe_scales) ps.coframe_scales.push_back(TensorField::constant(n, {}, {s}));
  ps.check_shape();
  return ps;
}

Matrix se3_contravariant(double alpha, double beta) {
  Matrix m = Matrix::Zero(6, 6);
  m.topLeftCorner(3, 3) = alpha * Matrix::Identity(3, 3);
  m.topRightCorner(3, 3) = beta * Matrix::Identity(3, 3);
  m.bottomLeftCorner(3, 3) = beta * Matrix::Identity(3, 3);
  return m;
}

MetricField se3_metric(double alpha, double beta) {
  if (beta == 0.0) throw DegeneracyError("se3 metric needs beta != 0", Point{alpha, beta}, INFINITY);
  // Inverse of [[a I, b I], [b I, 0]] is [[0, I/b], [I/b, -a/b^2 I]].
  Matrix g = Matrix::Zero(6, 6);
  g.topRightCorner(3, 3) = Matrix::Identity(3, 3) / beta;
  g.bottomLeftCorner(3, 3) = Matrix::Identity(3, 3) / beta;
  g.bottomRightCorner(3, 3) = -alpha / (beta * beta) * Matrix::Identity(3, 3);
  return MetricField::constant(g);
}

std::vector<std::vector<Vector>> casimir_lie_bracket(const StructureConstants& sc,
                                                     const std::vector<TensorField>& casimirs, const Point& p) {
  const DerivativeScheme exact;
  std::vector<Vector> covectors;
  for (const auto& c : casimirs) covectors.push_back(to_vector(differential(c, exact)(p)));
  std::vector<std::vector<Vector>> table(covectors.size());
  for (std::size_t i = 0; i < covectors.size(); ++i)
    for (std::size_t j = 0; j < covectors.size(); ++j) table[i].push_back(sc.bracket(covectors[i], covectors[j]));
  return table;
}

ConditionReport verify_integral_surface(const ParametricSurface& surface,
                                        const std::function<Matrix(const Point&)>& frame,
                                        const std::vector<std::vector<double>>& samples, double tolerance) {
  std::vector<Point> points;
  std::vector<double> residuals;
  for (const auto& s : samples) {
    if (static_cast<int>(s.size()) != surface.parameters) throw std::invalid_argument("sample has wrong parameter count");
    const Point x = surface.map(s);
    Matrix tangents;
    if (surface.tangents) {
      tangents = surface.tangents(s);
    } else {
      tangents.resize(x.dim(), surface.parameters);
      for (int k = 0; k < surface.parameters; ++k) {
        const double h = 1e-3 * std::max(1.0, std::abs(s[static_cast<std::size_t>(k)]));
        auto at = [&](double delta) {
          std::vector<double> q = s;
          q[static_cast<std::size_t>(k)] += delta;
          const Point y = surface.map(q);
          return Eigen::Map<const Vector>(y.coords().data(), y.dim()).eval();
        };
        tangents.col(k) = (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h);
      }
    }
    const Matrix xi = frame(x);
    if (numerical_rank(xi) < xi.cols()) {
      throw DegeneracyError("frame is rank deficient on the surface", x, condition_number(xi));
    }
    double worst = 0.0;
    const auto qr = xi.colPivHouseholderQr();
    for (Eigen::Index k = 0; k < tangents.cols(); ++k) {
      const Vector t = tangents.col(k);
      const Vector coeffs = qr.solve(t);
      worst = std::max(worst, (xi * coeffs - t).norm());
    }
    points.push_back(x);
    residuals.push_back(worst);
  }
  return ConditionReport::from_residuals("integral_surface", "tangent component outside the frame", points, residuals,
                                         tolerance);
}

}  // namespace poisson_ortho
