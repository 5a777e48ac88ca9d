#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "poisson_ortho/point.hpp"

namespace poisson_ortho {

enum class Slot { Upper, Lower };

/// Dense row-major components of a tensor at one point, slots in declaration order.
using Components = std::vector<double>;

/// A tensor field on a chart: a pure map from points to components.
///
/// Fields may carry an exact derivative (for example when built from parsed
/// expressions). `exact_derivative(axis)` then returns the field of partial
/// derivatives along that axis, which may itself be exact.
class TensorField {
 public:
  using Evaluator = std::function<Components(const Point&)>;
  using DerivativeFactory = std::function<TensorField(int axis)>;

  TensorField(int dim, std::vector<Slot> slots, Evaluator eval,
              DerivativeFactory exact_derivative = {});

  /// Field with the same components everywhere; its exact derivative is zero.
  static TensorField constant(int dim, std::vector<Slot> slots, Components values);

  int dim() const { return impl_->dim; }
  int rank() const { return static_cast<int>(impl_->slots.size()); }
  const std::vector<Slot>& slots() const { return impl_->slots; }
  /// dim^rank.
  std::size_t size() const { return impl_->size; }

  bool is_scalar() const { return impl_->slots.empty(); }
  bool is_vector() const { return impl_->slots == std::vector<Slot>{Slot::Upper}; }
  bool is_one_form() const { return impl_->slots == std::vector<Slot>{Slot::Lower}; }

  /// Throws EvaluationError if any component is not finite.
  Components operator()(const Point& p) const;

  bool has_exact_derivative() const { return static_cast<bool>(impl_->derivative); }
  TensorField exact_derivative(int axis) const;

 private:
  struct Impl {
    int dim;
    std::vector<Slot> slots;
    std::size_t size;
    Evaluator eval;
    DerivativeFactory derivative;
  };
  std::shared_ptr<const Impl> impl_;
};

}  // namespace poisson_ortho
