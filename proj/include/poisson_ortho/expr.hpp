#pragma once

// Scalar expressions over chart coordinates.
//
// Grammar (whitespace is insignificant):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?
//   exponent:= unary-level expression folding to an integer constant
//   primary := number | 'pi' | 'x' digits | func '(' expr ')' | '(' expr ')'
//   func    := 'sin' | 'cos' | 'exp' | 'atan' | 'sqrt'
//   number  := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]
//
// '^' binds tighter than unary minus, so "-x1^2" is -(x1^2). Exponents are
// right-associative and must be integer constants, which keeps the grammar
// closed under differentiation.

#include <cstddef>
#include <memory>
#include <string>
#include <variant>

#include "poisson_ortho/errors.hpp"
#include "poisson_ortho/point.hpp"

namespace poisson_ortho::dsl {

class SyntaxError : public ConfigError {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : ConfigError(message + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Division by zero or sqrt of a negative number.
class DomainError : public EvaluationError {
 public:
  DomainError(const std::string& message, Point where, std::size_t offset)
      : EvaluationError(message + " (expression byte " + std::to_string(offset) + ")", std::move(where)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

enum class BinaryOp { Add, Sub, Mul, Div };
enum class Function { Sin, Cos, Exp, Atan, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Literal { double value; };
struct Pi {};
/// 1-based, as written in the text.
struct Variable { int index; };
struct Negate { NodePtr operand; };
struct Binary { BinaryOp op; NodePtr lhs; NodePtr rhs; };
struct Power { NodePtr base; int exponent; };
struct Call { Function fn; NodePtr arg; };

struct Node {
  std::variant<Literal, Pi, Variable, Negate, Binary, Power, Call> data;
  /// Byte offset in the source text; 0 for synthesized nodes.
  std::size_t offset = 0;
};

/// Immutable expression tree bound to a chart dimension.
class Expr {
 public:
  Expr(NodePtr root, int dim);

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  int dim() const { return dim_; }

  /// True if the tree is a literal equal to `value`.
  bool is_literal(double value) const;

 private:
  NodePtr root_;
  int dim_;
};

Expr parse(const std::string& text, int dim);

double evaluate(const Expr& e, const Point& p);

/// Symbolic partial derivative along `axis` (0-based: axis 0 is x1).
Expr differentiate(const Expr& e, int axis);

/// Text that parses back to a structurally identical tree.
std::string to_string(const Expr& e);

/// Tree equality ignoring source offsets.
bool structurally_equal(const Expr& a, const Expr& b);

}  // namespace poisson_ortho::dsl
