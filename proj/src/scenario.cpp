#include "poisson_ortho/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "poisson_ortho/dsl_field.hpp"
#include "poisson_ortho/errors.hpp"
#include "poisson_ortho/expr.hpp"

namespace poisson_ortho {

namespace {

using json = nlohmann::json;

ExprMatrix model4d_metric(const std::string& f) {
  return {{"1", "0", f, "0"}, {"0", "1", "0", "0"}, {f, "0", "1", "0"}, {"0", "0", "0", "1"}};
}

ExprMatrix canonical_4d_poisson() {
  return {{"0", "0", "0", "0"}, {"0", "0", "0", "0"}, {"0", "0", "0", "1"}, {"0", "0", "-1", "0"}};
}

ScenarioConfig model4d(const std::string& name, const std::string& description, ExprMatrix metric) {
  ScenarioConfig c;
  c.name = name;
  c.description = description;
  c.dim = 4;
  c.poisson.kind = PoissonSpec::Kind::Matrix;
  c.poisson.matrix = canonical_4d_poisson();
  c.metric.kind = MetricSpec::Kind::Matrix;
  c.metric.matrix = std::move(metric);
  c.casimirs = {"x1", "x2"};
  c.grid = Grid::uniform(Point{0, 0, 0, 0}, 1.0, 3);
  return c;
}

ScenarioConfig lie_scenario(const std::string& name, const std::string& description) {
  const BuiltinAlgebra a = builtin_algebra(name);
  ScenarioConfig c;
  c.name = name;
  c.description = description;
  c.dim = a.constants.dim();
  c.poisson.kind = PoissonSpec::Kind::Builtin;
  c.poisson.algebra = name;
  if (name == "se3") {
    c.metric.kind = MetricSpec::Kind::Se3;
    c.metric.alpha = 0.0;
    c.metric.beta = 1.0;
  } else {
    c.metric.kind = MetricSpec::Kind::Builtin;
  }
  c.casimirs = a.casimirs;
  for (double s : a.coframe_scales) {
    std::ostringstream out;
    out.precision(17);
    out << s;
    c.coframe_scales.push_back(out.str());
  }
  c.grid = Grid::uniform(a.default_center, a.default_half_width, 3);
  return c;
}

std::string where(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

void check_matrix(const ExprMatrix& m, int dim, const std::string& field) {
  if (m.size() != static_cast<std::size_t>(dim)) {
    throw ConfigError(field + ": expected " + std::to_string(dim) + " rows, got " + std::to_string(m.size()));
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != static_cast<std::size_t>(dim)) {
      throw ConfigError(where(field, i) + ": expected " + std::to_string(dim) + " entries");
    }
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      try {
        dsl::parse(m[i][j], dim);
      } catch (const ConfigError& e) {
        throw ConfigError(where(where(field, i), j) + ": " + e.what());
      }
    }
  }
}

void check_expressions(const std::vector<std::string>& list, int dim, const std::string& field) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    try {
      dsl::parse(list[i], dim);
    } catch (const ConfigError& e) {
      throw ConfigError(where(field, i) + ": " + e.what());
    }
  }
}

// -- JSON config parsing ---------------------------------------------------

void reject_unknown(const json& obj, std::initializer_list<const char*> keys, const std::string& field) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ConfigError(field + ": unknown key '" + key + "'");
  }
}

const json& require(const json& obj, const char* key, const std::string& field) {
  if (!obj.contains(key)) throw ConfigError(field + ": missing key '" + key + "'");
  return obj.at(key);
}

std::string as_string(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) {
    std::ostringstream s;
    s.precision(17);
    s << v.get<double>();
    return s.str();
  }
  throw ConfigError(field + ": expected an expression string");
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field + ": expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field + ": expected an integer");
  return v.get<int>();
}

std::vector<std::string> as_strings(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], where(field, i)));
  return out;
}

ExprMatrix as_matrix(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field + ": expected an array of rows");
  ExprMatrix out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_strings(v[i], where(field, i)));
  return out;
}

std::vector<double> per_axis(const json& v, int dim, const std::string& field) {
  if (v.is_number()) return std::vector<double>(static_cast<std::size_t>(dim), v.get<double>());
  if (!v.is_array()) throw ConfigError(field + ": expected a number or an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], where(field, i)));
  return out;
}

}  // namespace

const char* const kToolVersion = "1.0.0";
const char* const kReportSchemaVersion = "1";

void ScenarioConfig::validate() const {
  if (name.empty()) throw ConfigError("name: must not be empty");
  if (dim < 1) throw ConfigError("dim: must be positive");

  int rank = 0;
  switch (poisson.kind) {
    case PoissonSpec::Kind::Matrix:
      check_matrix(poisson.matrix, dim, "poisson.matrix");
      rank = dim - static_cast<int>(casimirs.size());
      break;
    case PoissonSpec::Kind::Canonical:
      rank = poisson.rank;
      if (rank < 0 || rank > dim || rank % 2 != 0) throw ConfigError("poisson.canonical.rank: must be even and at most dim");
      break;
    case PoissonSpec::Kind::Builtin: {
      const BuiltinAlgebra a = builtin_algebra(poisson.algebra);
      if (a.constants.dim() != dim) {
        throw ConfigError("dim: algebra '" + poisson.algebra + "' has dimension " + std::to_string(a.constants.dim()));
      }
      rank = a.rank;
      break;
    }
  }
  if (rank < 0 || rank % 2 != 0) throw ConfigError("casimirs: dim minus the number of Casimirs must be an even rank");
  if (static_cast<int>(casimirs.size()) != dim - rank) {
    throw ConfigError("casimirs: expected " + std::to_string(dim - rank) + " expressions");
  }
  check_expressions(casimirs, dim, "casimirs");
  if (!coframe_scales.empty() && coframe_scales.size() != casimirs.size()) {
    throw ConfigError("coframe_scales: expected one entry per Casimir");
  }
  check_expressions(coframe_scales, dim, "coframe_scales");

  switch (metric.kind) {
    case MetricSpec::Kind::Matrix: {
      check_matrix(metric.matrix, dim, "metric.matrix");
      for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
          const auto a = dsl::parse(metric.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], dim);
          const auto b = dsl::parse(metric.matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)], dim);
          if (!dsl::structurally_equal(a, b)) {
            throw ConfigError("metric.matrix: entries [" + std::to_string(i) + "][" + std::to_string(j) + "] and [" +
                              std::to_string(j) + "][" + std::to_string(i) + "] differ; the metric must be symmetric");
          }
        }
      break;
    }
    case MetricSpec::Kind::Builtin:
      if (poisson.kind != PoissonSpec::Kind::Builtin) throw ConfigError("metric: builtin metric needs a builtin algebra");
      break;
    case MetricSpec::Kind::Se3:
      if (dim != 6) throw ConfigError("metric.se3: needs dim 6");
      if (metric.beta == 0.0 || !std::isfinite(metric.beta) || !std::isfinite(metric.alpha)) {
        throw ConfigError("metric.se3: beta must be finite and nonzero");
      }
      break;
  }

  if (grid.dim() != dim) throw ConfigError("grid.center: expected " + std::to_string(dim) + " coordinates");
  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  try {
    scheme.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scheme: ") + e.what());
  }
  if (tolerance && !(*tolerance > 0.0 && std::isfinite(*tolerance))) throw ConfigError("tolerance: must be positive");
}

std::vector<std::string> builtin_scenario_names() {
  return {"euclid4", "model4d-atan", "blockdiag4", "so3", "sl2r", "so3xso3", "se3"};
}

ScenarioConfig builtin_scenario(const std::string& name) {
  if (name == "euclid4") {
    return model4d("euclid4", "canonical rank-2 Poisson tensor on R^4 with the Euclidean metric",
                   model4d_metric("0"));
  }
  if (name == "model4d-atan") {
    return model4d("model4d-atan", "canonical rank-2 Poisson tensor on R^4, metric coupling x1 and x3 by atan(x2)/pi",
                   model4d_metric("(1/pi)*atan(x2)"));
  }
  if (name == "blockdiag4") {
    return model4d("blockdiag4", "canonical rank-2 Poisson tensor on R^4 with a non-constant block-diagonal metric",
                   {{"1.5 + 0.5*sin(x3)", "0.2*x4", "0", "0"},
                    {"0.2*x4", "1 + 0.25*x1^2", "0", "0"},
                    {"0", "0", "1 + 0.25*x2^2", "0.3*cos(x1)"},
                    {"0", "0", "0.3*cos(x1)", "2 + 0.5*atan(x2)"}});
  }
  if (name == "so3") return lie_scenario(name, "Lie-Poisson structure on so(3)* with the metric -K");
  if (name == "sl2r") return lie_scenario(name, "Lie-Poisson structure on sl(2,R)* with the Killing metric");
  if (name == "so3xso3") return lie_scenario(name, "Lie-Poisson structure on (so(3)+so(3))* with the metric -K (extension)");
  if (name == "se3") return lie_scenario(name, "Lie-Poisson structure on se(3)* with the ad-invariant metric, alpha 0, beta 1");
  throw ConfigError("unknown scenario '" + name + "'");
}

ScenarioConfig parse_scenario_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(doc, {"name", "description", "dim", "poisson", "metric", "casimirs", "coframe_scales", "grid", "scheme",
                       "tolerance"},
                 "config");

  ScenarioConfig c;
  const json& name = require(doc, "name", "config");
  if (!name.is_string()) throw ConfigError("name: expected a string");
  c.name = name.get<std::string>();
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) throw ConfigError("description: expected a string");
    c.description = doc["description"].get<std::string>();
  }
  c.dim = as_int(require(doc, "dim", "config"), "dim");
  if (c.dim < 1) throw ConfigError("dim: must be positive");

  const json& poisson = require(doc, "poisson", "config");
  if (!poisson.is_object() || poisson.size() != 1) {
    throw ConfigError("poisson: expected exactly one of 'matrix', 'canonical', 'builtin'");
  }
  if (poisson.contains("matrix")) {
    c.poisson.kind = PoissonSpec::Kind::Matrix;
    c.poisson.matrix = as_matrix(poisson["matrix"], "poisson.matrix");
  } else if (poisson.contains("canonical")) {
    c.poisson.kind = PoissonSpec::Kind::Canonical;
    const json& can = poisson["canonical"];
    if (!can.is_object()) throw ConfigError("poisson.canonical: expected an object");
    reject_unknown(can, {"rank"}, "poisson.canonical");
    c.poisson.rank = as_int(require(can, "rank", "poisson.canonical"), "poisson.canonical.rank");
  } else if (poisson.contains("builtin")) {
    c.poisson.kind = PoissonSpec::Kind::Builtin;
    if (!poisson["builtin"].is_string()) throw ConfigError("poisson.builtin: expected an algebra name");
    c.poisson.algebra = poisson["builtin"].get<std::string>();
    builtin_algebra(c.poisson.algebra);
  } else {
    throw ConfigError("poisson: expected exactly one of 'matrix', 'canonical', 'builtin'");
  }

  const json& metric = require(doc, "metric", "config");
  if (metric.is_string() && metric.get<std::string>() == "builtin") {
    c.metric.kind = MetricSpec::Kind::Builtin;
  } else if (metric.is_object() && metric.size() == 1 && metric.contains("matrix")) {
    c.metric.kind = MetricSpec::Kind::Matrix;
    c.metric.matrix = as_matrix(metric["matrix"], "metric.matrix");
  } else if (metric.is_object() && metric.size() == 1 && metric.contains("se3")) {
    c.metric.kind = MetricSpec::Kind::Se3;
    const json& se3 = metric["se3"];
    if (!se3.is_object()) throw ConfigError("metric.se3: expected an object");
    reject_unknown(se3, {"alpha", "beta"}, "metric.se3");
    c.metric.alpha = as_number(require(se3, "alpha", "metric.se3"), "metric.se3.alpha");
    c.metric.beta = as_number(require(se3, "beta", "metric.se3"), "metric.se3.beta");
  } else {
    throw ConfigError("metric: expected \"builtin\", {\"matrix\": ...} or {\"se3\": {...}}");
  }

  if (doc.contains("casimirs")) {
    c.casimirs = as_strings(doc["casimirs"], "casimirs");
  } else if (c.poisson.kind == PoissonSpec::Kind::Builtin) {
    c.casimirs = builtin_algebra(c.poisson.algebra).casimirs;
  }
  if (doc.contains("coframe_scales")) c.coframe_scales = as_strings(doc["coframe_scales"], "coframe_scales");

  const json& grid = require(doc, "grid", "config");
  if (!grid.is_object()) throw ConfigError("grid: expected an object");
  reject_unknown(grid, {"center", "half_width", "points_per_axis"}, "grid");
  const std::vector<double> center = per_axis(require(grid, "center", "grid"), c.dim, "grid.center");
  try {
    c.grid.center = Point(center);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid.center: ") + e.what());
  }
  c.grid.half_width = per_axis(require(grid, "half_width", "grid"), c.dim, "grid.half_width");
  for (double p : per_axis(require(grid, "points_per_axis", "grid"), c.dim, "grid.points_per_axis")) {
    if (p != std::floor(p)) throw ConfigError("grid.points_per_axis: expected integers");
    c.grid.points_per_axis.push_back(static_cast<int>(p));
  }

  if (doc.contains("scheme")) {
    const json& scheme = doc["scheme"];
    if (!scheme.is_object()) throw ConfigError("scheme: expected an object");
    reject_unknown(scheme, {"kind", "step"}, "scheme");
    const std::string kind = scheme.contains("kind") ? as_string(scheme["kind"], "scheme.kind") : "symbolic";
    const double step = scheme.contains("step") ? as_number(scheme["step"], "scheme.step") : 1e-5;
    try {
      c.scheme = DerivativeScheme::parse(kind, step);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("scheme: ") + e.what());
    }
  }
  if (doc.contains("tolerance")) c.tolerance = as_number(doc["tolerance"], "tolerance");

  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::string& name_or_path) {
  for (const auto& n : builtin_scenario_names()) {
    if (n == name_or_path) return builtin_scenario(n);
  }
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("'" + name_or_path + "' is neither a built-in scenario nor a readable file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_json(buffer.str());
}

Scenario build_scenario(const ScenarioConfig& config) {
  config.validate();
  const int n = config.dim;
  std::optional<BuiltinAlgebra> algebra;
  TensorField bivector = TensorField::constant(n, {Slot::Upper, Slot::Upper}, Components(static_cast<std::size_t>(n * n), 0.0));
  int rank = 0;
  switch (config.poisson.kind) {
    case PoissonSpec::Kind::Matrix:
      bivector = dsl::matrix_field(n, {Slot::Upper, Slot::Upper}, config.poisson.matrix);
      rank = n - static_cast<int>(config.casimirs.size());
      break;
    case PoissonSpec::Kind::Canonical: {
      rank = config.poisson.rank;
      const int transversal = n - rank;
      const int k = rank / 2;
      Matrix P = Matrix::Zero(n, n);
      for (int i = 0; i < k; ++i) {
        P(transversal + i, transversal + k + i) = -1.0;
        P(transversal + k + i, transversal + i) = 1.0;
      }
      bivector = TensorField::constant(n, {Slot::Upper, Slot::Upper}, to_components(P));
      break;
    }
    case PoissonSpec::Kind::Builtin:
      algebra = builtin_algebra(config.poisson.algebra);
      bivector = linear_poisson(algebra->constants);
      rank = algebra->rank;
      break;
  }

  PoissonStructure ps{bivector, {}, {}, rank};
  for (const auto& c : config.casimirs) ps.casimirs.push_back(dsl::scalar_field(dsl::parse(c, n)));
  for (const auto& s : config.coframe_scales) ps.coframe_scales.push_back(dsl::scalar_field(dsl::parse(s, n)));
  ps.check_shape();

  std::optional<MetricField> metric;
  switch (config.metric.kind) {
    case MetricSpec::Kind::Matrix:
      metric = MetricField(dsl::matrix_field(n, {Slot::Lower, Slot::Lower}, config.metric.matrix));
      break;
    case MetricSpec::Kind::Builtin:
      metric = MetricField::from_contravariant(algebra->contravariant_metric);
      break;
    case MetricSpec::Kind::Se3:
      metric = se3_metric(config.metric.alpha, config.metric.beta);
      break;
  }

  Scenario s{config, ps, *metric, algebra, {}};
  if (algebra) s.regular = algebra->regular;
  return s;
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Integrable: return "integrable";
    case RunStatus::NonIntegrable: return "non-integrable";
    case RunStatus::Invalid: return "invalid";
    case RunStatus::ConfigError: return "config-error";
  }
  return "invalid";
}

namespace {

std::vector<std::vector<double>> linspace_samples(int parameters, int count) {
  std::vector<double> axis;
  for (int i = 0; i < count; ++i) axis.push_back(-1.0 + 2.0 * i / (count - 1));
  std::vector<std::vector<double>> out;
  if (parameters == 1) {
    for (double s : axis) out.push_back({s});
  } else {
    for (double s : axis)
      for (double t : axis) out.push_back({s, t});
  }
  return out;
}

LieExtras lie_extras(const Scenario& s) {
  const BuiltinAlgebra& a = *s.algebra;
  LieExtras x;
  x.algebra = a.name;
  x.constants_valid = validate_constants(a.constants).valid();
  x.jacobi_residual = linear_jacobi_residual(a.constants);
  x.killing = killing_form(a.constants);
  x.bracket_point = s.config.grid.center;
  x.casimir_brackets = casimir_lie_bracket(a.constants, s.poisson.casimirs, x.bracket_point);
  for (const auto& row : x.casimir_brackets)
    for (const auto& v : row) x.casimir_bracket_max = std::max(x.casimir_bracket_max, max_abs(v));

  const bool default_metric = s.config.metric.kind != MetricSpec::Kind::Matrix;
  const PoissonStructure ps = s.poisson;
  const MetricField m = s.metric;
  const DerivativeScheme scheme = s.config.scheme;
  auto frame = [ps, m, scheme](const Point& p) { return orthogonal_frame(ps, m, p, scheme).vectors; };
  const Point base = s.config.grid.center;
  const int n = base.dim();
  if (default_metric && a.name == "so3") {
    ParametricSurface ray;
    ray.parameters = 1;
    ray.map = [base, n](const std::vector<double>& st) {
      std::vector<double> c(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = std::exp(st[0]) * base[static_cast<std::size_t>(i)];
      return Point(c);
    };
    ray.tangents = [base, n](const std::vector<double>& st) {
      Matrix t(n, 1);
      for (int i = 0; i < n; ++i) t(i, 0) = std::exp(st[0]) * base[static_cast<std::size_t>(i)];
      return t;
    };
    x.integral_surface = verify_integral_surface(ray, frame, linspace_samples(1, 5), 1e-9);
  } else if (default_metric && a.name == "se3") {
    ParametricSurface surface;
    surface.parameters = 2;
    // (s,t) -> e^s (x,p) + e^t (p,0)
    surface.map = [base](const std::vector<double>& st) {
      std::vector<double> c(6);
      for (std::size_t i = 0; i < 3; ++i) {
        c[i] = std::exp(st[0]) * base[i] + std::exp(st[1]) * base[3 + i];
        c[3 + i] = std::exp(st[0]) * base[3 + i];
      }
      return Point(c);
    };
    surface.tangents = [base](const std::vector<double>& st) {
      Matrix t = Matrix::Zero(6, 2);
      for (int i = 0; i < 6; ++i) t(i, 0) = std::exp(st[0]) * base[static_cast<std::size_t>(i)];
      for (int i = 0; i < 3; ++i) t(i, 1) = std::exp(st[1]) * base[static_cast<std::size_t>(3 + i)];
      return t;
    };
    x.integral_surface = verify_integral_surface(surface, frame, linspace_samples(2, 5), 1e-9);
  }
  return x;
}

}  // namespace

RunReport run(const ScenarioConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.config = config;
  auto finish = [&](RunStatus status, std::string message) {
    report.status = status;
    report.message = std::move(message);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  };

  std::optional<Scenario> scenario;
  try {
    scenario = build_scenario(config);
    if (scenario->regular) {
      for (const auto& p : sample(config.grid)) {
        if (!scenario->regular(p)) {
          return finish(RunStatus::ConfigError, "grid point " + p.to_string() + " is outside the regular domain");
        }
      }
    }
  } catch (const ConfigError& e) {
    return finish(RunStatus::ConfigError, e.what());
  } catch (const std::invalid_argument& e) {
    return finish(RunStatus::ConfigError, e.what());
  }

  const double tolerance = config.effective_tolerance();
  try {
    const double structural = config.scheme.kind == DerivativeScheme::Kind::Symbolic ? 1e-9 : 1e-6;
    report.validation = validate_poisson(scenario->poisson, config.grid, config.scheme, structural);
    const PoissonValidation& v = *report.validation;
    if (!v.antisymmetry.holds) return finish(RunStatus::Invalid, "Poisson tensor is not antisymmetric");
    if (!v.jacobi.holds) return finish(RunStatus::Invalid, "Poisson tensor violates the Jacobi identity");
    if (!v.casimir_annihilation.holds) return finish(RunStatus::Invalid, "Casimirs are not annihilated by P");
    if (!v.rank.holds) {
      return finish(RunStatus::Invalid, "Poisson tensor has rank " + std::to_string(v.ranks.front()) + ", expected " +
                                            std::to_string(scenario->poisson.expected_rank));
    }
    report.verdict = evaluate_verdict(scenario->poisson, scenario->metric, config.grid, config.scheme, tolerance);
    if (scenario->algebra) report.lie = lie_extras(*scenario);
  } catch (const Error& e) {
    return finish(RunStatus::Invalid, e.what());
  } catch (const std::exception& e) {
    return finish(RunStatus::Invalid, e.what());
  }

  if (!report.verdict->consistent) {
    return finish(RunStatus::Invalid, "conditions disagree: " + report.verdict->inconsistencies.front());
  }
  if (report.lie && report.lie->integral_surface && !report.lie->integral_surface->holds) {
    return finish(RunStatus::Invalid, "integral surface is not tangent to the orthogonal distribution");
  }
  return finish(report.verdict->integrable ? RunStatus::Integrable : RunStatus::NonIntegrable, "");
}

}  // namespace poisson_ortho
