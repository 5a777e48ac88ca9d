#include <gtest/gtest.h>

#include <cmath>

#include "poisson_ortho/derivative.hpp"
#include "poisson_ortho/dsl_field.hpp"
#include "poisson_ortho/errors.hpp"
#include "poisson_ortho/point.hpp"
#include "poisson_ortho/tensor_field.hpp"

using namespace poisson_ortho;

namespace {

TensorField sin_x1(int dim) {
  return TensorField(dim, {}, [](const Point& p) { return Components{std::sin(p[0])}; });
}

TensorField vec(int dim, const std::vector<std::string>& c) { return dsl::vector_field(dim, {Slot::Upper}, c); }

// Same field without its exact derivative.
TensorField numeric(const TensorField& f) {
  return TensorField(f.dim(), f.slots(), [f](const Point& p) { return f(p); });
}

}  // namespace

TEST(Point, ShiftAndFormat) {
  const Point p{1.0, 2.0};
  EXPECT_EQ(p.shifted(1, 0.5), (Point{1.0, 2.5}));
  EXPECT_EQ(p.dim(), 2);
  EXPECT_EQ(Point{0.5}.to_string(), "(0.5)");
}

TEST(Grid, SampleOrderAndSize) {
  const Grid g = Grid::uniform(Point{0.0, 10.0}, 1.0, 3);
  EXPECT_EQ(g.size(), 9u);
  const auto pts = sample(g);
  ASSERT_EQ(pts.size(), 9u);
  EXPECT_EQ(pts.front(), (Point{-1.0, 9.0}));
  EXPECT_EQ(pts[1], (Point{-1.0, 10.0}));
  EXPECT_EQ(pts.back(), (Point{1.0, 11.0}));
}

TEST(Grid, SinglePointIsCenter) {
  const auto pts = sample(Grid::uniform(Point{0.3, 0.4}, 2.0, 1));
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0], (Point{0.3, 0.4}));
}

TEST(Grid, RejectsBadShapes) {
  Grid g = Grid::uniform(Point{0.0, 0.0}, 1.0, 2);
  g.points_per_axis = {2};
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g = Grid::uniform(Point{0.0}, -1.0, 2);
  EXPECT_THROW(g.validate(), std::invalid_argument);
  g = Grid::uniform(Point{0.0}, 1.0, 0);
  EXPECT_THROW(g.validate(), std::invalid_argument);
}

TEST(TensorField, NonFiniteValueRaises) {
  const TensorField f(1, {}, [](const Point& p) { return Components{1.0 / p[0]}; });
  EXPECT_THROW(f(Point{0.0}), EvaluationError);
  EXPECT_DOUBLE_EQ(f(Point{2.0})[0], 0.5);
}

TEST(TensorField, ConstantHasZeroDerivative) {
  const TensorField c = TensorField::constant(2, {Slot::Upper}, {1.0, 2.0});
  ASSERT_TRUE(c.has_exact_derivative());
  EXPECT_EQ(c.exact_derivative(0)(Point{3.0, 4.0}), (Components{0.0, 0.0}));
}

TEST(Derivative, SchemeParse) {
  EXPECT_EQ(DerivativeScheme::parse("central2").kind, DerivativeScheme::Kind::Central2);
  EXPECT_EQ(DerivativeScheme::parse("central4", 1e-3).step, 1e-3);
  EXPECT_EQ(DerivativeScheme::parse("symbolic").name(), "symbolic");
  EXPECT_THROW(DerivativeScheme::parse("spectral"), std::invalid_argument);
  EXPECT_THROW(DerivativeScheme::parse("central4", 0.0), std::invalid_argument);
}

TEST(Derivative, CentralSchemesMatchCosine) {
  const TensorField f = sin_x1(2);
  const Point p{0.7, -1.0};
  const double exact = std::cos(0.7);
  const auto c2 = partial_derivative(f, p, 0, {DerivativeScheme::Kind::Central2, 1e-5});
  const auto c4 = partial_derivative(f, p, 0, {DerivativeScheme::Kind::Central4, 1e-3});
  EXPECT_NEAR(c2[0], exact, 1e-9);
  EXPECT_NEAR(c4[0], exact, 1e-12);
  EXPECT_NEAR(partial_derivative(f, p, 1, {})[0], 0.0, 1e-12);
}

TEST(Derivative, FourthOrderConvergence) {
  const TensorField f = sin_x1(1);
  const Point p{0.3};
  auto err = [&](double h) {
    return std::abs(partial_derivative(f, p, 0, {DerivativeScheme::Kind::Central4, h})[0] - std::cos(0.3));
  };
  const double ratio = err(2e-2) / err(1e-2);
  EXPECT_NEAR(ratio, 16.0, 0.5);
}

TEST(Derivative, SymbolicUsesExactDerivative) {
  const TensorField f = dsl::scalar_field(dsl::parse("x1^3*x2", 2));
  const auto d = partial_derivatives(f, Point{2.0, 5.0}, {});
  EXPECT_EQ(d[0][0], 60.0);
  EXPECT_EQ(d[1][0], 8.0);
}

TEST(LieBracket, CoordinateFields) {
  // [d1, x1 d2] = d2
  const auto b = lie_bracket(vec(2, {"1", "0"}), vec(2, {"0", "x1"}), Point{0.4, 0.9}, {});
  EXPECT_EQ(b, (Components{0.0, 1.0}));
}

TEST(LieBracket, RotationsOfR3) {
  // [L1, L2] = -L3 for L_i = x x e_i rotations.
  const TensorField l1 = vec(3, {"0", "-x3", "x2"});
  const TensorField l2 = vec(3, {"x3", "0", "-x1"});
  const TensorField l3 = vec(3, {"-x2", "x1", "0"});
  const Point p{0.3, -0.2, 0.8};
  const auto b = lie_bracket(l1, l2, p, {});
  const auto c = l3(p);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(b[static_cast<std::size_t>(i)], -c[static_cast<std::size_t>(i)], 1e-15);
}

TEST(LieBracket, AntisymmetryAndJacobi) {
  const TensorField x = vec(3, {"sin(x2)", "x1*x3", "1"});
  const TensorField y = vec(3, {"x3^2", "exp(x1)", "x2"});
  const TensorField z = vec(3, {"x2", "cos(x3)", "x1*x2"});
  const Point p{0.2, 0.5, -0.4};
  const DerivativeScheme s;
  const auto xy = lie_bracket(x, y, p, s);
  const auto yx = lie_bracket(y, x, p, s);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(xy[static_cast<std::size_t>(i)], -yx[static_cast<std::size_t>(i)], 1e-15);

  auto bracket_field = [s](const TensorField& a, const TensorField& b) {
    return TensorField(a.dim(), {Slot::Upper}, [a, b, s](const Point& q) { return lie_bracket(a, b, q, s); });
  };
  const auto j1 = lie_bracket(x, bracket_field(y, z), p, s);
  const auto j2 = lie_bracket(y, bracket_field(z, x), p, s);
  const auto j3 = lie_bracket(z, bracket_field(x, y), p, s);
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    EXPECT_NEAR(j1[k] + j2[k] + j3[k], 0.0, 1e-8);
  }
}

TEST(LieBracket, FiniteDifferenceAgreesWithExact) {
  const TensorField x = vec(2, {"x2^2", "sin(x1)"});
  const TensorField y = vec(2, {"atan(x1)", "x1*x2"});
  const Point p{0.6, -0.3};
  const auto exact = lie_bracket(x, y, p, {});
  const auto fd = lie_bracket(numeric(x), numeric(y), p, {DerivativeScheme::Kind::Central4, 1e-4});
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(exact[static_cast<std::size_t>(i)], fd[static_cast<std::size_t>(i)], 1e-10);
}

TEST(FieldAlgebra, SumAndScaledStayExact) {
  const TensorField a = vec(2, {"x1", "x2^2"});
  const TensorField b = vec(2, {"1", "x1"});
  const TensorField s = dsl::scalar_field(dsl::parse("x1*x2", 2));
  const TensorField sum_ab = sum(a, b);
  const TensorField sa = scaled(s, a);
  ASSERT_TRUE(sum_ab.has_exact_derivative());
  ASSERT_TRUE(sa.has_exact_derivative());
  const Point p{2.0, 3.0};
  EXPECT_EQ(sum_ab(p), (Components{3.0, 11.0}));
  EXPECT_EQ(sa(p), (Components{12.0, 54.0}));
  // d1 (x1 x2 * (x1, x2^2)) = (2 x1 x2, x2^3)
  EXPECT_EQ(sa.exact_derivative(0)(p), (Components{12.0, 27.0}));
  EXPECT_FALSE(sum(a, numeric(b)).has_exact_derivative());
}

TEST(FieldAlgebra, Differential) {
  const TensorField c = dsl::scalar_field(dsl::parse("x1^2 + 3*x2", 2));
  const TensorField dc = differential(c, {});
  EXPECT_TRUE(dc.is_one_form());
  EXPECT_EQ(dc(Point{1.5, 0.0}), (Components{3.0, 3.0}));
  const TensorField dn = differential(numeric(c), {DerivativeScheme::Kind::Central4, 1e-4});
  EXPECT_NEAR(dn(Point{1.5, 0.0})[0], 3.0, 1e-10);
}
