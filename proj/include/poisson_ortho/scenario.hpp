#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "poisson_ortho/derivative.hpp"
#include "poisson_ortho/integrability.hpp"
#include "poisson_ortho/lie_poisson.hpp"
#include "poisson_ortho/metric.hpp"
#include "poisson_ortho/poisson.hpp"

namespace poisson_ortho {

using ExprMatrix = std::vector<std::vector<std::string>>;

struct PoissonSpec {
  enum class Kind { Matrix, Canonical, Builtin };
  Kind kind = Kind::Matrix;
  /// Kind::Matrix: expressions, row-major.
  ExprMatrix matrix;
  /// Kind::Canonical: rank of the block form diag(0, [[0,-I],[I,0]]).
  int rank = 0;
  /// Kind::Builtin: algebra name.
  std::string algebra;
};

struct MetricSpec {
  enum class Kind { Matrix, Builtin, Se3 };
  Kind kind = Kind::Matrix;
  /// Kind::Matrix: covariant entries g_{mu nu}.
  ExprMatrix matrix;
  double alpha = 0.0;
  double beta = 1.0;
};

struct ScenarioConfig {
  std::string name;
  std::string description;
  int dim = 0;
  PoissonSpec poisson;
  MetricSpec metric;
  /// Casimir expressions; filled from the algebra for builtin Poisson specs.
  std::vector<std::string> casimirs;
  /// Optional expressions multiplying dc^i.
  std::vector<std::string> coframe_scales;
  Grid grid;
  DerivativeScheme scheme;
  std::optional<double> tolerance;

  double effective_tolerance() const { return tolerance ? *tolerance : default_tolerance(scheme); }
  /// Field-level checks; throws ConfigError.
  void validate() const;
};

/// Numerical objects built from a config.
struct Scenario {
  ScenarioConfig config;
  PoissonStructure poisson;
  MetricField metric;
  std::optional<BuiltinAlgebra> algebra;
  /// Empty when every point of the chart is admissible.
  std::function<bool(const Point&)> regular;
};

std::vector<std::string> builtin_scenario_names();
ScenarioConfig builtin_scenario(const std::string& name);

/// Built-in name, or path to a JSON config. Throws ConfigError.
ScenarioConfig load_scenario(const std::string& name_or_path);
ScenarioConfig parse_scenario_json(const std::string& text);

Scenario build_scenario(const ScenarioConfig& config);

enum class RunStatus { Integrable = 0, NonIntegrable = 1, Invalid = 2, ConfigError = 3 };

std::string to_string(RunStatus s);

struct LieExtras {
  std::string algebra;
  bool constants_valid = true;
  Rational jacobi_residual;
  RationalMatrix killing;
  Point bracket_point;
  /// [dc^i, dc^j] at bracket_point.
  std::vector<std::vector<Vector>> casimir_brackets;
  double casimir_bracket_max = 0.0;
  std::optional<ConditionReport> integral_surface;
};

struct RunReport {
  ScenarioConfig config;
  RunStatus status = RunStatus::Integrable;
  std::string message;
  std::optional<PoissonValidation> validation;
  std::optional<Verdict> verdict;
  std::optional<LieExtras> lie;
  double seconds = 0.0;

  int exit_code() const { return static_cast<int>(status); }
};

/// Runs every check; never throws for errors raised by the numerics, which
/// are mapped to RunStatus::Invalid.
RunReport run(const ScenarioConfig& config);

extern const char* const kToolVersion;
extern const char* const kReportSchemaVersion;

/// Deterministic JSON: fixed key order, doubles printed with 17 significant
/// digits. Timing is not included.
std::string report_json(const RunReport& report);
std::string report_text(const RunReport& report);

}  // namespace poisson_ortho
