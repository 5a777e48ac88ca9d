#pragma once

#include <string>
#include <vector>

#include "poisson_ortho/expr.hpp"
#include "poisson_ortho/tensor_field.hpp"

namespace poisson_ortho::dsl {

/// Tensor field whose components are expressions (row-major by slot order).
/// Derivatives are exact to any order; derived expressions are cached.
TensorField field(int dim, std::vector<Slot> slots, std::vector<Expr> components);

TensorField scalar_field(const Expr& e);

/// Parses every entry of `rows` and builds an n x n field with the given slots.
TensorField matrix_field(int dim, std::vector<Slot> slots, const std::vector<std::vector<std::string>>& rows);

/// Parses a list of component strings.
TensorField vector_field(int dim, std::vector<Slot> slots, const std::vector<std::string>& components);

}  // namespace poisson_ortho::dsl
