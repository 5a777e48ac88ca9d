#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "poisson_ortho/point.hpp"

namespace poisson_ortho {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field produced a non-finite value, or a scalar expression left its domain.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, Point where)
      : Error(what + " at " + where.to_string()), point_(std::move(where)) {}

  const Point& point() const { return point_; }

 private:
  Point point_;
};

/// A metric, Gram matrix or coframe lost rank at a point.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, Point where, double condition_number)
      : Error(what + " at " + where.to_string() +
              " (condition number " + std::to_string(condition_number) + ")"),
        point_(std::move(where)),
        condition_number_(condition_number) {}

  const Point& point() const { return point_; }
  double condition_number() const { return condition_number_; }

 private:
  Point point_;
  double condition_number_;
};

/// The Poisson tensor changes rank across the sampling grid.
class RegularityError : public Error {
 public:
  RegularityError(const std::string& what, Point first, Point second)
      : Error(what + " between " + first.to_string() + " and " + second.to_string()),
        first_(std::move(first)),
        second_(std::move(second)) {}

  const Point& first() const { return first_; }
  const Point& second() const { return second_; }

 private:
  Point first_;
  Point second_;
};

/// A criterion was requested on inputs that do not satisfy its hypotheses.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Independent criteria disagreed; the run cannot be trusted.
class InvalidRunError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent scenario input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace poisson_ortho
