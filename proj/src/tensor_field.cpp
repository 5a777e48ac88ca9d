#include "poisson_ortho/tensor_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "poisson_ortho/errors.hpp"

namespace poisson_ortho {

TensorField::TensorField(int dim, std::vector<Slot> slots, Evaluator eval,
                         DerivativeFactory exact_derivative) {
  if (dim < 1) throw std::invalid_argument("tensor field dimension must be positive");
  if (!eval) throw std::invalid_argument("tensor field needs an evaluator");
  std::size_t size = 1;
  for (std::size_t i = 0; i < slots.size(); ++i) size *= static_cast<std::size_t>(dim);
  impl_ = std::make_shared<const Impl>(
      Impl{dim, std::move(slots), size, std::move(eval), std::move(exact_derivative)});
}

TensorField TensorField::constant(int dim, std::vector<Slot> slots, Components values) {
  auto zero_slots = slots;
  const std::size_t n = values.size();
  auto derivative = [dim, zero_slots, n](int) {
    return TensorField::constant(dim, zero_slots, Components(n, 0.0));
  };
  return TensorField(
      dim, std::move(slots), [values = std::move(values)](const Point&) { return values; },
      derivative);
}

Components TensorField::operator()(const Point& p) const {
  if (p.dim() != impl_->dim) {
    throw std::invalid_argument("point dimension " + std::to_string(p.dim()) +
                                " does not match field dimension " + std::to_string(impl_->dim));
  }
  Components c = impl_->eval(p);
  if (c.size() != impl_->size) {
    throw std::logic_error("field evaluator returned " + std::to_string(c.size()) +
                           " components, expected " + std::to_string(impl_->size));
  }
  for (double v : c) {
    if (!std::isfinite(v)) throw EvaluationError("non-finite field value", p);
  }
  return c;
}

TensorField TensorField::exact_derivative(int axis) const {
  if (!impl_->derivative) throw std::logic_error("field has no exact derivative");
  if (axis < 0 || axis >= impl_->dim) throw std::out_of_range("derivative axis out of range");
  return impl_->derivative(axis);
}

}  // namespace poisson_ortho
