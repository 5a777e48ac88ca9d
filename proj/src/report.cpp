#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "poisson_ortho/scenario.hpp"

namespace poisson_ortho {

namespace {

using ojson = nlohmann::ordered_json;

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(const ojson& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + ojson(key).dump() + ": ";
        write(value, out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& v : j) scalars = scalars && !v.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(j[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(j[i], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case ojson::value_t::number_float:
      out += number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

ojson coords(const Point& p) {
  ojson a = ojson::array();
  for (double v : p.coords()) a.push_back(v);
  return a;
}

ojson vec(const Vector& v) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ojson mat(const Matrix& m) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i).transpose()));
  return a;
}

ojson exprs(const ExprMatrix& m) {
  ojson a = ojson::array();
  for (const auto& row : m) a.push_back(row);
  return a;
}

ojson config_json(const ScenarioConfig& c) {
  ojson j;
  j["name"] = c.name;
  j["description"] = c.description;
  j["dim"] = c.dim;
  ojson poisson;
  switch (c.poisson.kind) {
    case PoissonSpec::Kind::Matrix: poisson["matrix"] = exprs(c.poisson.matrix); break;
    case PoissonSpec::Kind::Canonical: poisson["canonical"] = ojson{{"rank", c.poisson.rank}}; break;
    case PoissonSpec::Kind::Builtin: poisson["builtin"] = c.poisson.algebra; break;
  }
  j["poisson"] = poisson;
  switch (c.metric.kind) {
    case MetricSpec::Kind::Matrix: j["metric"] = ojson{{"matrix", exprs(c.metric.matrix)}}; break;
    case MetricSpec::Kind::Builtin: j["metric"] = "builtin"; break;
    case MetricSpec::Kind::Se3:
      j["metric"] = ojson{{"se3", ojson{{"alpha", c.metric.alpha}, {"beta", c.metric.beta}}}};
      break;
  }
  j["casimirs"] = c.casimirs;
  j["coframe_scales"] = c.coframe_scales;
  ojson grid;
  grid["center"] = coords(c.grid.center);
  grid["half_width"] = c.grid.half_width;
  grid["points_per_axis"] = c.grid.points_per_axis;
  j["grid"] = grid;
  j["scheme"] = ojson{{"kind", c.scheme.name()}, {"step", c.scheme.step}};
  j["tolerance"] = c.effective_tolerance();
  return j;
}

ojson report_json_obj(const ConditionReport& r, bool with_residuals) {
  ojson j;
  j["id"] = r.id;
  j["description"] = r.description;
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  j["holds"] = r.holds;
  if (!r.points.empty()) {
    j["witness_index"] = r.witness;
    j["witness"] = coords(r.witness_point());
  }
  if (with_residuals) j["residuals"] = r.residuals;
  return j;
}

ojson rational_matrix(const RationalMatrix& m) {
  ojson a = ojson::array();
  for (const auto& row : m) {
    ojson r = ojson::array();
    for (const auto& v : row) r.push_back(v.to_string());
    a.push_back(r);
  }
  return a;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string report_json(const RunReport& report) {
  ojson j;
  j["schema"] = kReportSchemaVersion;
  j["tool"] = ojson{{"name", "poisson-ortho"}, {"version", kToolVersion}};
  j["scenario"] = config_json(report.config);
  j["status"] = to_string(report.status);
  j["exit_code"] = report.exit_code();
  j["message"] = report.message;

  if (report.validation) {
    const auto& v = *report.validation;
    ojson val;
    val["antisymmetry"] = report_json_obj(v.antisymmetry, false);
    val["jacobi"] = report_json_obj(v.jacobi, false);
    val["casimir_annihilation"] = report_json_obj(v.casimir_annihilation, false);
    val["rank"] = v.ranks.empty() ? 0 : v.ranks.front();
    j["poisson_validation"] = val;
  }

  if (report.verdict) {
    const Verdict& v = *report.verdict;
    ojson verdict;
    verdict["integrable"] = v.integrable;
    verdict["consistent"] = v.consistent;
    verdict["inconsistencies"] = v.inconsistencies;
    ojson conditions = ojson::array();
    for (const auto& r : v.conditions) conditions.push_back(report_json_obj(r, true));
    verdict["conditions"] = conditions;
    ojson corollaries = ojson::array();
    for (const auto& r : v.corollaries) corollaries.push_back(report_json_obj(r, true));
    verdict["corollaries"] = corollaries;
    verdict["theorem2"] = report_json_obj(v.theorem2, false);
    if (v.dw) {
      verdict["dw"] = report_json_obj(*v.dw, true);
      verdict["dw_agrees"] = v.dw_agrees;
    } else {
      verdict["dw"] = nullptr;
    }
    j["verdict"] = verdict;

    ojson points = ojson::array();
    for (const auto& e : v.evaluations) {
      ojson p;
      p["point"] = coords(e.point);
      p["gram"] = mat(e.gram);
      p["frobenius_vector"] = vec(e.frobenius_vector);
      points.push_back(p);
    }
    j["points"] = points;
  }

  if (report.lie) {
    const LieExtras& l = *report.lie;
    ojson lie;
    lie["algebra"] = l.algebra;
    lie["constants_valid"] = l.constants_valid;
    lie["linear_jacobi_residual"] = l.jacobi_residual.to_string();
    lie["killing_form"] = rational_matrix(l.killing);
    lie["casimir_bracket_point"] = coords(l.bracket_point);
    ojson table = ojson::array();
    for (const auto& row : l.casimir_brackets) {
      ojson r = ojson::array();
      for (const auto& b : row) r.push_back(vec(b));
      table.push_back(r);
    }
    lie["casimir_brackets"] = table;
    lie["casimir_bracket_max"] = l.casimir_bracket_max;
    if (l.integral_surface) lie["integral_surface"] = report_json_obj(*l.integral_surface, true);
    j["lie_poisson"] = lie;
  }

  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

std::string report_text(const RunReport& report) {
  std::ostringstream out;
  const ScenarioConfig& c = report.config;
  out << "scenario " << c.name << " (dim " << c.dim << ", " << c.grid.size() << " points, scheme " << c.scheme.name()
      << ", tolerance " << fmt(c.effective_tolerance()) << ")\n";
  if (!c.description.empty()) out << "  " << c.description << "\n";

  if (report.validation) {
    const auto& v = *report.validation;
    out << "poisson: antisymmetry " << fmt(v.antisymmetry.max_residual) << ", jacobi " << fmt(v.jacobi.max_residual)
        << ", P dc " << fmt(v.casimir_annihilation.max_residual) << ", rank " << (v.ranks.empty() ? 0 : v.ranks.front())
        << "\n";
  }

  auto line = [&](const ConditionReport& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "  %-18s %-13s %-6s ", r.id.c_str(), fmt(r.max_residual).c_str(),
                  r.holds ? "holds" : "fails");
    out << buf << r.description;
    if (!r.holds) out << "  [worst at " << r.witness_point().to_string() << "]";
    out << "\n";
  };

  if (report.verdict) {
    const Verdict& v = *report.verdict;
    out << "conditions (max residual over grid):\n";
    for (const auto& r : v.conditions) line(r);
    out << "sufficient conditions:\n";
    for (const auto& r : v.corollaries) line(r);
    out << "co-vanishing of A[xi_i,xi_j] and N_v: " << (v.theorem2.holds ? "yes" : "no") << "\n";
    if (v.dw) {
      out << "block-form chart:\n";
      line(*v.dw);
      out << "  agrees with conditions: " << (v.dw_agrees ? "yes" : "no") << "\n";
    }
    if (!v.integrable) {
      const auto& first = v.conditions.front();
      for (const auto& e : v.evaluations) {
        if (e.point == first.witness_point()) {
          out << "frobenius vector at witness:";
          for (Eigen::Index i = 0; i < e.frobenius_vector.size(); ++i) out << " " << fmt(e.frobenius_vector(i));
          out << "\n";
        }
      }
    }
  }

  if (report.lie) {
    const LieExtras& l = *report.lie;
    out << "algebra " << l.algebra << ": constants " << (l.constants_valid ? "valid" : "invalid")
        << ", linear Jacobi residual " << l.jacobi_residual.to_string() << ", max |[dc^i, dc^j]| "
        << fmt(l.casimir_bracket_max) << "\n";
    out << "  Killing form:";
    for (const auto& row : l.killing) {
      out << " [";
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i].to_string();
      out << "]";
    }
    out << "\n";
    if (l.integral_surface) line(*l.integral_surface);
  }

  out << "result: " << to_string(report.status);
  if (!report.message.empty()) out << " (" << report.message << ")";
  out << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "time: %.3f s\n", report.seconds);
  out << buf;
  return out.str();
}

}  // namespace poisson_ortho
