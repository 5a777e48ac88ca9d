#include "poisson_ortho/dsl_field.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>

namespace poisson_ortho::dsl {

namespace {

struct ExprTensor {
  ExprTensor(int dim, std::vector<Slot> slots, std::vector<Expr> exprs)
      : dim(dim),
        slots(std::move(slots)),
        exprs(std::move(exprs)),
        once(std::make_unique<std::once_flag[]>(static_cast<std::size_t>(dim))),
        derived(static_cast<std::size_t>(dim)) {}

  const std::shared_ptr<const ExprTensor>& derivative(int axis) const {
    const auto a = static_cast<std::size_t>(axis);
    std::call_once(once[a], [&] {
      std::vector<Expr> d;
      d.reserve(exprs.size());
      for (const auto& e : exprs) d.push_back(differentiate(e, axis));
      derived[a] = std::make_shared<const ExprTensor>(dim, slots, std::move(d));
    });
    return derived[a];
  }

  int dim;
  std::vector<Slot> slots;
  std::vector<Expr> exprs;
  std::unique_ptr<std::once_flag[]> once;
  mutable std::vector<std::shared_ptr<const ExprTensor>> derived;
};

TensorField wrap(std::shared_ptr<const ExprTensor> t) {
  auto eval = [t](const Point& p) {
    Components c;
    c.reserve(t->exprs.size());
    for (const auto& e : t->exprs) c.push_back(evaluate(e, p));
    return c;
  };
  auto derivative = [t](int axis) { return wrap(t->derivative(axis)); };
  return TensorField(t->dim, t->slots, eval, derivative);
}

}  // namespace

TensorField field(int dim, std::vector<Slot> slots, std::vector<Expr> components) {
  std::size_t expected = 1;
  for (std::size_t i = 0; i < slots.size(); ++i) expected *= static_cast<std::size_t>(dim);
  if (components.size() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) + " expressions, got " +
                                std::to_string(components.size()));
  }
  for (const auto& e : components) {
    if (e.dim() != dim) throw std::invalid_argument("expression dimension does not match field dimension");
  }
  return wrap(std::make_shared<const ExprTensor>(dim, std::move(slots), std::move(components)));
}

TensorField scalar_field(const Expr& e) { return field(e.dim(), {}, {e}); }

TensorField matrix_field(int dim, std::vector<Slot> slots, const std::vector<std::vector<std::string>>& rows) {
  if (rows.size() != static_cast<std::size_t>(dim)) throw std::invalid_argument("matrix must have dim rows");
  std::vector<Expr> exprs;
  for (const auto& row : rows) {
    if (row.size() != static_cast<std::size_t>(dim)) throw std::invalid_argument("matrix must have dim columns");
    for (const auto& text : row) exprs.push_back(parse(text, dim));
  }
  return field(dim, std::move(slots), std::move(exprs));
}

TensorField vector_field(int dim, std::vector<Slot> slots, const std::vector<std::string>& components) {
  std::vector<Expr> exprs;
  for (const auto& text : components) exprs.push_back(parse(text, dim));
  return field(dim, std::move(slots), std::move(exprs));
}

}  // namespace poisson_ortho::dsl
