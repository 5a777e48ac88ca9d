#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "poisson_ortho/dsl_field.hpp"
#include "poisson_ortho/expr.hpp"
#include "random_expr.hpp"

using namespace poisson_ortho;
using namespace poisson_ortho::dsl;

namespace {

double eval(const std::string& text, const Point& p) { return evaluate(parse(text, p.dim()), p); }

}  // namespace

TEST(Parse, Precedence) {
  const Point p{3.0, 2.0};
  EXPECT_EQ(eval("1 + 2*3", p), 7.0);
  EXPECT_EQ(eval("(1 + 2)*3", p), 9.0);
  EXPECT_EQ(eval("-x1^2", p), -9.0);
  EXPECT_EQ(eval("(-x1)^2", p), 9.0);
  EXPECT_EQ(eval("2^3^2", p), 512.0);
  EXPECT_EQ(eval("x1 - x2 - 1", p), 0.0);
  EXPECT_EQ(eval("12/x2/3", p), 2.0);
  EXPECT_EQ(eval("2*-x2", p), -4.0);
  EXPECT_EQ(eval("x2^-1", p), 0.5);
  EXPECT_EQ(eval("x2^(1+1)", p), 4.0);
}

TEST(Parse, NumbersConstantsAndFunctions) {
  const Point p{0.0};
  EXPECT_EQ(eval("1.5e2", p), 150.0);
  EXPECT_EQ(eval("2E-1", p), 0.2);
  EXPECT_DOUBLE_EQ(eval("pi", p), std::numbers::pi);
  EXPECT_DOUBLE_EQ(eval("cos(pi) + sin(0) + exp(0) + atan(1)*4 + sqrt(16)", p), std::numbers::pi + 4.0);
  EXPECT_EQ(eval("  x1\t+ 1 ", p), 1.0);
}

TEST(Parse, SyntaxErrorsCarryOffsets) {
  auto offset_of = [](const std::string& text) -> long {
    try {
      parse(text, 2);
    } catch (const SyntaxError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  EXPECT_EQ(offset_of("x1 + * 2"), 5);
  EXPECT_EQ(offset_of("(x1"), 3);
  EXPECT_EQ(offset_of("x1 x2"), 3);
  EXPECT_EQ(offset_of("x3"), 0);
  EXPECT_EQ(offset_of("x0"), 0);
  EXPECT_EQ(offset_of("tan(x1)"), 0);
  EXPECT_EQ(offset_of("x1 # 2"), 3);
  EXPECT_NE(offset_of("x1^0.5"), -1);
  EXPECT_NE(offset_of("x1^x2"), -1);
  EXPECT_NE(offset_of(""), -1);
  EXPECT_NE(offset_of("sin x1"), -1);
  EXPECT_NE(offset_of("1e"), -1);
}

TEST(Parse, SyntaxErrorIsConfigError) { EXPECT_THROW(parse("1 +", 1), ConfigError); }

TEST(Evaluate, DomainErrors) {
  EXPECT_THROW(eval("1/x1", Point{0.0}), DomainError);
  EXPECT_THROW(eval("sqrt(x1)", Point{-1.0}), DomainError);
  EXPECT_THROW(eval("x1^-2", Point{0.0}), DomainError);
  EXPECT_THROW(evaluate(parse("x1", 1), Point{0.0, 1.0}), std::invalid_argument);
  try {
    eval("1 + 1/x1", Point{0.0});
  } catch (const DomainError& e) {
    EXPECT_EQ(e.offset(), 5u);
    EXPECT_EQ(e.point(), Point{0.0});
  }
}

TEST(Differentiate, KnownDerivatives) {
  const Point p{0.4, 1.3};
  auto d = [&](const std::string& text, int axis) { return evaluate(differentiate(parse(text, 2), axis), p); };
  EXPECT_DOUBLE_EQ(d("x1^3", 0), 3 * 0.4 * 0.4);
  EXPECT_DOUBLE_EQ(d("x1*x2", 1), 0.4);
  EXPECT_DOUBLE_EQ(d("sin(x2)", 1), std::cos(1.3));
  EXPECT_DOUBLE_EQ(d("cos(x1)", 0), -std::sin(0.4));
  EXPECT_DOUBLE_EQ(d("exp(2*x1)", 0), 2 * std::exp(0.8));
  EXPECT_DOUBLE_EQ(d("sqrt(x2)", 1), 0.5 / std::sqrt(1.3));
  EXPECT_DOUBLE_EQ(d("x1/x2", 1), -0.4 / (1.3 * 1.3));
  EXPECT_DOUBLE_EQ(d("x2^-2", 1), -2.0 / (1.3 * 1.3 * 1.3));
  EXPECT_EQ(d("x2", 0), 0.0);
  EXPECT_THROW(differentiate(parse("x1", 2), 2), std::out_of_range);
}

TEST(Differentiate, AtanModel) {
  const Expr f = parse("(1/pi)*atan(x2)", 4);
  const Expr df = differentiate(f, 1);
  for (double x2 : {-1.0, 0.0, 0.5, 2.0}) {
    const Point p{0.3, x2, -0.1, 0.0};
    EXPECT_NEAR(evaluate(df, p), 1.0 / (std::numbers::pi * (1.0 + x2 * x2)), 1e-15);
    EXPECT_EQ(evaluate(differentiate(f, 0), p), 0.0);
  }
}

TEST(Differentiate, ZeroDerivativeFoldsToLiteral) {
  EXPECT_TRUE(differentiate(parse("sin(x1)*x1", 2), 1).is_literal(0.0));
}

TEST(RoundTrip, KnownStrings) {
  for (const char* text : {"-x1^2", "(-x1)^2", "x1 - (x2 - 1)", "2^3^2", "1/(x1*x2)", "-(-x1)", "pi*atan(x2)/3",
                           "x1^-1", "1.25e-7*x2"}) {
    const Expr e = parse(text, 2);
    const Expr back = parse(to_string(e), 2);
    EXPECT_TRUE(structurally_equal(e, back)) << text << " -> " << to_string(e);
  }
  EXPECT_FALSE(structurally_equal(parse("x1 - x2 - 1", 2), parse("x1 - (x2 - 1)", 2)));
}

TEST(RoundTrip, RandomExpressionsMatchFiniteDifferences) {
  test_support::ExprGenerator gen(7, 3);
  for (int i = 0; i < 200; ++i) {
    const std::string text = gen(3);
    const Expr e = parse(text, 3);
    ASSERT_TRUE(structurally_equal(e, parse(to_string(e), 3))) << text;
    const Point p = gen.point();
    const int axis = gen.axis();
    const double exact = evaluate(differentiate(e, axis), p);
    const double fd = test_support::central_difference(e, p, axis);
    EXPECT_LE(std::abs(exact - fd), 1e-7 * std::max(1.0, std::abs(exact))) << text << " at " << p.to_string();
  }
}

TEST(DslField, MatrixFieldHasExactSecondDerivatives) {
  const TensorField g = matrix_field(2, {Slot::Lower, Slot::Lower}, {{"x1^2", "x1*x2"}, {"x1*x2", "1"}});
  ASSERT_TRUE(g.has_exact_derivative());
  const TensorField d00 = g.exact_derivative(0).exact_derivative(0);
  EXPECT_EQ(d00(Point{5.0, 7.0}), (Components{2.0, 0.0, 0.0, 0.0}));
  EXPECT_THROW(matrix_field(2, {Slot::Lower, Slot::Lower}, {{"1", "0"}}), std::invalid_argument);
}

TEST(DslField, VectorField) {
  const TensorField v = vector_field(3, {Slot::Upper}, {"x1", "x2*x3", "2"});
  EXPECT_TRUE(v.is_vector());
  EXPECT_EQ(v(Point{1.0, 2.0, 3.0}), (Components{1.0, 6.0, 2.0}));
  EXPECT_EQ(v.exact_derivative(2)(Point{1.0, 2.0, 3.0}), (Components{0.0, 2.0, 0.0}));
}
