#include "poisson_ortho/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace poisson_ortho::dsl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

NodePtr make(decltype(Node::data) data, std::size_t offset = 0) {
  return std::make_shared<const Node>(Node{std::move(data), offset});
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  double number = 0.0;
  std::string text;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
          i = j;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        } else {
          throw SyntaxError("malformed exponent in number", i);
        }
      }
      const std::string text = s.substr(start, i - start);
      if (text == ".") throw SyntaxError("malformed number", start);
      char* end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (end != text.c_str() + text.size() || !std::isfinite(v)) {
        throw SyntaxError("malformed number '" + text + "'", start);
      }
      out.push_back({Tok::Number, start, v, text});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, start, 0.0, s.substr(start, i - start)});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default: throw SyntaxError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({kind, start, 0.0, {}});
    ++i;
  }
  out.push_back({Tok::End, s.size(), 0.0, {}});
  return out;
}

// ---------------------------------------------------------------------------
// Pratt parser

constexpr int kAdditive = 10;
constexpr int kMultiplicative = 20;
constexpr int kUnary = 30;
constexpr int kPower = 40;

std::optional<double> constant_value(const Node& n);

class Parser {
 public:
  Parser(const std::string& text, int dim) : tokens_(lex(text)), dim_(dim) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr(0);
    if (peek().kind != Tok::End) throw SyntaxError("unexpected trailing input", peek().offset);
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  NodePtr parse_expr(int min_bp) {
    NodePtr lhs = parse_prefix();
    while (true) {
      const Token& op = peek();
      int lbp = 0;
      switch (op.kind) {
        case Tok::Plus:
        case Tok::Minus: lbp = kAdditive; break;
        case Tok::Star:
        case Tok::Slash: lbp = kMultiplicative; break;
        case Tok::Caret: lbp = kPower; break;
        default: return lhs;
      }
      if (lbp <= min_bp) return lhs;
      next();
      if (op.kind == Tok::Caret) {
        // Right-associative: the exponent may itself contain '^'.
        NodePtr exponent = parse_expr(kPower - 1);
        lhs = make(Power{lhs, integer_exponent(*exponent, op.offset)}, op.offset);
        continue;
      }
      NodePtr rhs = parse_expr(lbp);
      BinaryOp bop = BinaryOp::Add;
      switch (op.kind) {
        case Tok::Plus: bop = BinaryOp::Add; break;
        case Tok::Minus: bop = BinaryOp::Sub; break;
        case Tok::Star: bop = BinaryOp::Mul; break;
        default: bop = BinaryOp::Div; break;
      }
      lhs = make(Binary{bop, lhs, rhs}, op.offset);
    }
  }

  NodePtr parse_prefix() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number: return make(Literal{t.number}, t.offset);
      case Tok::Minus: {
        NodePtr operand = parse_expr(kUnary);
        return make(Negate{operand}, t.offset);
      }
      case Tok::LParen: {
        NodePtr inner = parse_expr(0);
        if (next().kind != Tok::RParen) throw SyntaxError("expected ')'", tokens_[pos_ - 1].offset);
        return inner;
      }
      case Tok::Ident: return parse_identifier(t);
      case Tok::End: throw SyntaxError("unexpected end of input", t.offset);
      default: throw SyntaxError("unexpected token", t.offset);
    }
  }

  NodePtr parse_identifier(const Token& t) {
    const std::string& id = t.text;
    if (id == "pi") return make(Pi{}, t.offset);
    static const std::pair<const char*, Function> kFunctions[] = {
        {"sin", Function::Sin}, {"cos", Function::Cos}, {"exp", Function::Exp},
        {"atan", Function::Atan}, {"sqrt", Function::Sqrt}};
    for (const auto& [name, fn] : kFunctions) {
      if (id == name) {
        if (next().kind != Tok::LParen) throw SyntaxError("expected '(' after " + id, t.offset + id.size());
        NodePtr arg = parse_expr(0);
        if (next().kind != Tok::RParen) throw SyntaxError("expected ')'", tokens_[pos_ - 1].offset);
        return make(Call{fn, arg}, t.offset);
      }
    }
    if (id.size() >= 2 && id[0] == 'x') {
      bool digits = true;
      for (std::size_t i = 1; i < id.size(); ++i) digits = digits && std::isdigit(static_cast<unsigned char>(id[i]));
      if (digits) {
        const long index = id.size() > 9 ? -1 : std::strtol(id.c_str() + 1, nullptr, 10);
        if (index < 1 || index > dim_) {
          throw SyntaxError("variable index out of range: " + id + " (dimension " + std::to_string(dim_) + ")",
                            t.offset);
        }
        return make(Variable{static_cast<int>(index)}, t.offset);
      }
    }
    throw SyntaxError("unknown identifier '" + id + "'", t.offset);
  }

  static int integer_exponent(const Node& exponent, std::size_t offset) {
    const auto v = constant_value(exponent);
    if (!v || !std::isfinite(*v) || std::floor(*v) != *v || std::abs(*v) > 1e6) {
      throw SyntaxError("exponent must be an integer constant", offset);
    }
    return static_cast<int>(*v);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int dim_;
};

// ---------------------------------------------------------------------------
// Evaluation

double apply(Function fn, double x) {
  switch (fn) {
    case Function::Sin: return std::sin(x);
    case Function::Cos: return std::cos(x);
    case Function::Exp: return std::exp(x);
    case Function::Atan: return std::atan(x);
    case Function::Sqrt: return std::sqrt(x);
  }
  return 0.0;
}

double power(double base, int n) {
  double result = 1.0;
  double b = n < 0 ? 1.0 / base : base;
  unsigned m = static_cast<unsigned>(n < 0 ? -static_cast<long>(n) : n);
  while (m) {
    if (m & 1u) result *= b;
    b *= b;
    m >>= 1u;
  }
  return result;
}

// Value of a variable-free subtree; nullopt if it mentions a coordinate or
// leaves its domain.
std::optional<double> constant_value(const Node& n) {
  return std::visit(
      Overloaded{
          [](const Literal& l) -> std::optional<double> { return l.value; },
          [](const Pi&) -> std::optional<double> { return std::numbers::pi; },
          [](const Variable&) -> std::optional<double> { return std::nullopt; },
          [](const Negate& u) -> std::optional<double> {
            auto v = constant_value(*u.operand);
            if (!v) return std::nullopt;
            return -*v;
          },
          [](const Binary& b) -> std::optional<double> {
            auto l = constant_value(*b.lhs);
            auto r = constant_value(*b.rhs);
            if (!l || !r) return std::nullopt;
            switch (b.op) {
              case BinaryOp::Add: return *l + *r;
              case BinaryOp::Sub: return *l - *r;
              case BinaryOp::Mul: return *l * *r;
              case BinaryOp::Div:
                if (*r == 0.0) return std::nullopt;
                return *l / *r;
            }
            return std::nullopt;
          },
          [](const Power& p) -> std::optional<double> {
            auto b = constant_value(*p.base);
            if (!b || (*b == 0.0 && p.exponent < 0)) return std::nullopt;
            return power(*b, p.exponent);
          },
          [](const Call& c) -> std::optional<double> {
            auto a = constant_value(*c.arg);
            if (!a || (c.fn == Function::Sqrt && *a < 0.0)) return std::nullopt;
            return apply(c.fn, *a);
          },
      },
      n.data);
}

double eval_node(const Node& n, const Point& p) {
  return std::visit(
      Overloaded{
          [](const Literal& l) { return l.value; },
          [](const Pi&) { return std::numbers::pi; },
          [&](const Variable& v) { return p[static_cast<std::size_t>(v.index - 1)]; },
          [&](const Negate& u) { return -eval_node(*u.operand, p); },
          [&](const Binary& b) {
            const double l = eval_node(*b.lhs, p);
            const double r = eval_node(*b.rhs, p);
            switch (b.op) {
              case BinaryOp::Add: return l + r;
              case BinaryOp::Sub: return l - r;
              case BinaryOp::Mul: return l * r;
              case BinaryOp::Div:
                if (r == 0.0) throw DomainError("division by zero", p, n.offset);
                return l / r;
            }
            return 0.0;
          },
          [&](const Power& pw) {
            const double b = eval_node(*pw.base, p);
            if (b == 0.0 && pw.exponent < 0) throw DomainError("division by zero", p, n.offset);
            return power(b, pw.exponent);
          },
          [&](const Call& c) {
            const double a = eval_node(*c.arg, p);
            if (c.fn == Function::Sqrt && a < 0.0) throw DomainError("sqrt of negative number", p, n.offset);
            return apply(c.fn, a);
          },
      },
      n.data);
}

// ---------------------------------------------------------------------------
// Folding constructors used by the differentiator

const Literal* as_literal(const NodePtr& n) { return std::get_if<Literal>(&n->data); }
bool is_value(const NodePtr& n, double v) {
  const auto* l = as_literal(n);
  return l && l->value == v;
}
NodePtr lit(double v) { return make(Literal{v}); }

NodePtr neg(NodePtr a) {
  if (const auto* l = as_literal(a)) return lit(-l->value);
  return make(Negate{std::move(a)});
}

NodePtr add(NodePtr a, NodePtr b) {
  const auto *la = as_literal(a), *lb = as_literal(b);
  if (la && lb) return lit(la->value + lb->value);
  if (is_value(a, 0.0)) return b;
  if (is_value(b, 0.0)) return a;
  return make(Binary{BinaryOp::Add, std::move(a), std::move(b)});
}

NodePtr sub(NodePtr a, NodePtr b) {
  const auto *la = as_literal(a), *lb = as_literal(b);
  if (la && lb) return lit(la->value - lb->value);
  if (is_value(b, 0.0)) return a;
  if (is_value(a, 0.0)) return neg(std::move(b));
  return make(Binary{BinaryOp::Sub, std::move(a), std::move(b)});
}

NodePtr mul(NodePtr a, NodePtr b) {
  const auto *la = as_literal(a), *lb = as_literal(b);
  if (la && lb) return lit(la->value * lb->value);
  if (is_value(a, 0.0) || is_value(b, 0.0)) return lit(0.0);
  if (is_value(a, 1.0)) return b;
  if (is_value(b, 1.0)) return a;
  return make(Binary{BinaryOp::Mul, std::move(a), std::move(b)});
}

NodePtr div(NodePtr a, NodePtr b) {
  const auto *la = as_literal(a), *lb = as_literal(b);
  if (la && lb && lb->value != 0.0) return lit(la->value / lb->value);
  if (is_value(a, 0.0)) return lit(0.0);
  if (is_value(b, 1.0)) return a;
  return make(Binary{BinaryOp::Div, std::move(a), std::move(b)});
}

NodePtr pow_node(NodePtr base, int n) {
  if (n == 0) return lit(1.0);
  if (n == 1) return base;
  if (const auto* l = as_literal(base)) {
    if (!(l->value == 0.0 && n < 0)) return lit(power(l->value, n));
  }
  return make(Power{std::move(base), n});
}

NodePtr call(Function fn, NodePtr arg) { return make(Call{fn, std::move(arg)}); }

NodePtr derive(const NodePtr& node, int var) {
  return std::visit(
      Overloaded{
          [](const Literal&) { return lit(0.0); },
          [](const Pi&) { return lit(0.0); },
          [&](const Variable& v) { return lit(v.index == var ? 1.0 : 0.0); },
          [&](const Negate& u) { return neg(derive(u.operand, var)); },
          [&](const Binary& b) {
            NodePtr da = derive(b.lhs, var);
            NodePtr db = derive(b.rhs, var);
            switch (b.op) {
              case BinaryOp::Add: return add(da, db);
              case BinaryOp::Sub: return sub(da, db);
              case BinaryOp::Mul: return add(mul(da, b.rhs), mul(b.lhs, db));
              case BinaryOp::Div:
                if (is_value(db, 0.0)) return div(da, b.rhs);
                return div(sub(mul(da, b.rhs), mul(b.lhs, db)), pow_node(b.rhs, 2));
            }
            return lit(0.0);
          },
          [&](const Power& p) {
            NodePtr du = derive(p.base, var);
            return mul(mul(lit(static_cast<double>(p.exponent)), pow_node(p.base, p.exponent - 1)), du);
          },
          [&](const Call& c) {
            NodePtr du = derive(c.arg, var);
            if (is_value(du, 0.0)) return lit(0.0);
            switch (c.fn) {
              case Function::Sin: return mul(call(Function::Cos, c.arg), du);
              case Function::Cos: return neg(mul(call(Function::Sin, c.arg), du));
              case Function::Exp: return mul(call(Function::Exp, c.arg), du);
              case Function::Atan: return mul(div(lit(1.0), add(lit(1.0), pow_node(c.arg, 2))), du);
              case Function::Sqrt: return div(du, mul(lit(2.0), call(Function::Sqrt, c.arg)));
            }
            return lit(0.0);
          },
      },
      node->data);
}

// ---------------------------------------------------------------------------
// Printing

int precedence(const Node& n) {
  return std::visit(
      Overloaded{
          [](const Literal& l) { return l.value < 0.0 ? kUnary : 100; },
          [](const Pi&) { return 100; },
          [](const Variable&) { return 100; },
          [](const Negate&) { return kUnary; },
          [](const Binary& b) {
            return (b.op == BinaryOp::Add || b.op == BinaryOp::Sub) ? kAdditive : kMultiplicative;
          },
          [](const Power&) { return kPower; },
          [](const Call&) { return 100; },
      },
      n.data);
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int digits = 1; digits < 17; ++digits) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", digits, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

const char* function_name(Function fn) {
  switch (fn) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
    case Function::Atan: return "atan";
    case Function::Sqrt: return "sqrt";
  }
  return "?";
}

std::string print(const Node& n);

std::string wrap(const Node& n, bool parens) { return parens ? "(" + print(n) + ")" : print(n); }

std::string print(const Node& n) {
  return std::visit(
      Overloaded{
          [](const Literal& l) {
            return l.value < 0.0 ? "(" + format_number(l.value) + ")" : format_number(l.value);
          },
          [](const Pi&) { return std::string("pi"); },
          [](const Variable& v) { return "x" + std::to_string(v.index); },
          [](const Negate& u) { return "-" + wrap(*u.operand, precedence(*u.operand) < kUnary); },
          [](const Binary& b) {
            const int prec = (b.op == BinaryOp::Add || b.op == BinaryOp::Sub) ? kAdditive : kMultiplicative;
            const char* sym = b.op == BinaryOp::Add ? " + " : b.op == BinaryOp::Sub ? " - "
                              : b.op == BinaryOp::Mul ? "*" : "/";
            return wrap(*b.lhs, precedence(*b.lhs) < prec) + sym + wrap(*b.rhs, precedence(*b.rhs) <= prec);
          },
          [](const Power& p) {
            const std::string exponent =
                p.exponent < 0 ? "(" + std::to_string(p.exponent) + ")" : std::to_string(p.exponent);
            return wrap(*p.base, precedence(*p.base) <= kPower) + "^" + exponent;
          },
          [](const Call& c) { return std::string(function_name(c.fn)) + "(" + print(*c.arg) + ")"; },
      },
      n.data);
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      Overloaded{
          [&](const Literal& l) { return l.value == std::get<Literal>(b.data).value; },
          [](const Pi&) { return true; },
          [&](const Variable& v) { return v.index == std::get<Variable>(b.data).index; },
          [&](const Negate& u) { return equal_nodes(*u.operand, *std::get<Negate>(b.data).operand); },
          [&](const Binary& x) {
            const auto& y = std::get<Binary>(b.data);
            return x.op == y.op && equal_nodes(*x.lhs, *y.lhs) && equal_nodes(*x.rhs, *y.rhs);
          },
          [&](const Power& x) {
            const auto& y = std::get<Power>(b.data);
            return x.exponent == y.exponent && equal_nodes(*x.base, *y.base);
          },
          [&](const Call& x) {
            const auto& y = std::get<Call>(b.data);
            return x.fn == y.fn && equal_nodes(*x.arg, *y.arg);
          },
      },
      a.data);
}

}  // namespace

Expr::Expr(NodePtr root, int dim) : root_(std::move(root)), dim_(dim) {
  if (!root_) throw std::invalid_argument("expression root is null");
  if (dim_ < 1) throw std::invalid_argument("expression dimension must be positive");
}

bool Expr::is_literal(double value) const { return is_value(root_, value); }

Expr parse(const std::string& text, int dim) {
  if (dim < 1) throw std::invalid_argument("expression dimension must be positive");
  bool blank = true;
  for (char c : text) blank = blank && std::isspace(static_cast<unsigned char>(c));
  if (blank) throw SyntaxError("empty expression", 0);
  return Expr(Parser(text, dim).parse_all(), dim);
}

double evaluate(const Expr& e, const Point& p) {
  if (p.dim() != e.dim()) {
    throw std::invalid_argument("point dimension " + std::to_string(p.dim()) +
                                " does not match expression dimension " + std::to_string(e.dim()));
  }
  return eval_node(e.root(), p);
}

Expr differentiate(const Expr& e, int axis) {
  if (axis < 0 || axis >= e.dim()) throw std::out_of_range("differentiation axis out of range");
  return Expr(derive(e.root_ptr(), axis + 1), e.dim());
}

std::string to_string(const Expr& e) { return print(e.root()); }

bool structurally_equal(const Expr& a, const Expr& b) { return equal_nodes(a.root(), b.root()); }

}  // namespace poisson_ortho::dsl
