#pragma once

#include <random>
#include <string>

#include "poisson_ortho/expr.hpp"
#include "poisson_ortho/point.hpp"

namespace test_support {

// Random expression text over x1..x{dim}. Denominators and sqrt arguments are
// kept away from zero so every expression is smooth on all of R^dim.
class ExprGenerator {
 public:
  ExprGenerator(unsigned seed, int dim) : rng_(seed), dim_(dim) {}

  std::string operator()(int depth) {
    if (depth == 0 || pick(4) == 0) return leaf();
    const std::string a = (*this)(depth - 1);
    switch (pick(12)) {
      case 0: return "(" + a + " + " + (*this)(depth - 1) + ")";
      case 1: return "(" + a + " - " + (*this)(depth - 1) + ")";
      case 2: return "(" + a + ")*(" + (*this)(depth - 1) + ")";
      case 3: return "(" + a + ")/(2 + sin(" + (*this)(depth - 1) + "))";
      case 4: return "(" + a + ")^" + std::to_string(2 + pick(2));
      case 5: return "sin(" + a + ")";
      case 6: return "cos(" + a + ")";
      case 7: return "atan(" + a + ")";
      case 8: return "exp(0.5*sin(" + a + "))";
      case 9: return "sqrt(1 + (" + a + ")^2)";
      case 10: return "-(" + a + ")";
      default: return "pi*" + a;
    }
  }

  poisson_ortho::Point point() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c;
    for (int i = 0; i < dim_; ++i) c.push_back(u(rng_));
    return poisson_ortho::Point(c);
  }

  int axis() { return pick(dim_); }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string leaf() {
    static const char* const numbers[] = {"0.5", "1", "2", "3", "1.25", "2e-1"};
    if (pick(3) == 0) return numbers[pick(6)];
    return "x" + std::to_string(1 + pick(dim_));
  }

  std::mt19937 rng_;
  int dim_;
};

// Fourth-order central difference of an expression, independent of the
// library's derivative code.
inline double central_difference(const poisson_ortho::dsl::Expr& e, const poisson_ortho::Point& p, int axis,
                                 double h = 1e-3) {
  auto f = [&](double d) { return poisson_ortho::dsl::evaluate(e, p.shifted(axis, d)); };
  return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
}

}  // namespace test_support
