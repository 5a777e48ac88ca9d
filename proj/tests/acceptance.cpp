#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_brackets.hpp"
#include "poisson_ortho/errors.hpp"
#include "poisson_ortho/scenario.hpp"
#include "random_expr.hpp"

using namespace poisson_ortho;

namespace {

constexpr double kInvPi = 1.0 / std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const std::vector<RunReport>& builtin_reports() {
  static const std::vector<RunReport> reports = [] {
    std::vector<RunReport> out;
    for (const auto& name : builtin_scenario_names()) out.push_back(run(builtin_scenario(name)));
    return out;
  }();
  return reports;
}

const RunReport& builtin_report(const std::string& name) {
  for (const auto& r : builtin_reports())
    if (r.config.name == name) return r;
  throw std::out_of_range(name);
}

// Diagonal metric in [1,2] plus trigonometric perturbations of size 0.1;
// diagonal dominance keeps it positive definite.
ScenarioConfig random_metric_config(std::mt19937& rng, int index) {
  std::uniform_real_distribution<double> diag(1.0, 2.0);
  std::uniform_real_distribution<double> freq(0.5, 2.0);
  std::uniform_int_distribution<int> axis(1, 4);
  std::uniform_int_distribution<int> trig(0, 1);
  auto wave = [&] {
    std::ostringstream s;
    s.precision(17);
    s << "0.1*" << (trig(rng) ? "sin(" : "cos(") << freq(rng) << "*x" << axis(rng) << ")";
    return s.str();
  };
  ScenarioConfig c = builtin_scenario("euclid4");
  c.name = "random-metric-" + std::to_string(index);
  c.description.clear();
  for (int i = 0; i < 4; ++i) {
    std::ostringstream d;
    d.precision(17);
    d << diag(rng) << " + " << wave();
    c.metric.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = d.str();
    for (int j = i + 1; j < 4; ++j) {
      const std::string w = wave();
      c.metric.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = w;
      c.metric.matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = w;
    }
  }
  c.grid = Grid::uniform(Point{0, 0, 0, 0}, 0.5, 2);
  return c;
}

const std::vector<RunReport>& random_reports() {
  static const std::vector<RunReport> reports = [] {
    std::mt19937 rng(20240611);
    std::vector<RunReport> out;
    for (int i = 0; i < 20; ++i) out.push_back(run(random_metric_config(rng, i)));
    return out;
  }();
  return reports;
}

const char* const kEquivalent[] = {"c2", "c3", "c4", "c5", "frobenius", "nijenhuis"};

// Pointwise agreement of the equivalent conditions on one report.
void check_equivalence(const RunReport& r, Outcome& out) {
  if (!r.verdict) {
    out.require(false, r.config.name + ": no verdict (" + r.message + ")");
    return;
  }
  const Verdict& v = *r.verdict;
  const ConditionReport& first = v.condition(kEquivalent[0]);
  for (const char* id : kEquivalent) {
    const ConditionReport& c = v.condition(id);
    for (std::size_t k = 0; k < c.residuals.size(); ++k) {
      out.require(c.holds_at(k) == first.holds_at(k),
                  r.config.name + ": " + id + " disagrees with c2 at " + c.points[k].to_string());
    }
  }
}

Outcome criterion1() {
  Outcome out;
  const RunReport& r = builtin_report("model4d-atan");
  out.require(r.exit_code() == 1, "exit code " + std::to_string(r.exit_code()));
  if (!r.verdict) return out;
  auto axis_max = [](const RunReport& rep) {
    const ConditionReport& c3 = rep.verdict->condition("c3");
    double m = 0.0;
    for (std::size_t k = 0; k < c3.points.size(); ++k)
      if (c3.points[k][1] == 0.0) m = std::max(m, c3.residuals[k]);
    return m;
  };
  const double symbolic = axis_max(r);
  out.require(std::abs(symbolic - kInvPi) <= 1e-6, "symbolic C3 on x2=0 is " + num(symbolic));

  ScenarioConfig fd = builtin_scenario("model4d-atan");
  fd.scheme = {DerivativeScheme::Kind::Central4, 1e-4};
  const RunReport rf = run(fd);
  out.require(rf.exit_code() == 1, "finite-difference exit code " + std::to_string(rf.exit_code()));
  double finite = 0.0;
  if (rf.verdict) finite = axis_max(rf);
  out.require(std::abs(finite - kInvPi) <= 1e-4, "finite-difference C3 on x2=0 is " + num(finite));

  const ConditionReport& frob = r.verdict->condition("frobenius");
  const Vector& w = r.verdict->evaluations.at(frob.witness).frobenius_vector;
  const double angle = std::acos(std::min(1.0, std::abs(w(2)) / w.norm()));
  out.require(angle <= 1e-5, "Frobenius witness off the third axis by " + num(angle) + " rad");
  if (out.pass) {
    out.detail = "exit 1, C3 on x2=0 " + num(symbolic) + " (fd " + num(finite) + "), witness " +
                 frob.witness_point().to_string() + " angle " + num(angle);
  }
  return out;
}

Outcome criterion2() {
  Outcome out;
  double worst = 0.0;
  for (const char* name : {"euclid4", "blockdiag4"}) {
    const RunReport& r = builtin_report(name);
    out.require(r.exit_code() == 0, std::string(name) + " exit code " + std::to_string(r.exit_code()));
    if (!r.verdict) continue;
    for (const auto& c : r.verdict->conditions) {
      worst = std::max(worst, c.max_residual);
      out.require(c.max_residual <= 1e-9, std::string(name) + " " + c.id + " residual " + num(c.max_residual));
    }
  }
  if (out.pass) out.detail = "both exit 0, max residual " + num(worst);
  return out;
}

Outcome criterion3() {
  Outcome out;
  std::size_t points = 0;
  for (const auto& r : builtin_reports()) {
    check_equivalence(r, out);
    if (r.verdict) points += r.verdict->evaluations.size();
  }
  int non_integrable = 0;
  for (const auto& r : random_reports()) {
    check_equivalence(r, out);
    if (r.verdict) {
      points += r.verdict->evaluations.size();
      non_integrable += r.verdict->integrable ? 0 : 1;
    }
  }
  if (out.pass) {
    out.detail = std::to_string(points) + " points agree (7 built-ins, 20 random metrics of which " +
                 std::to_string(non_integrable) + " non-integrable)";
  }
  return out;
}

Outcome criterion4() {
  Outcome out;
  std::size_t points = 0;
  for (const auto& r : builtin_reports()) {
    if (!r.verdict) {
      out.require(false, r.config.name + ": no verdict");
      continue;
    }
    for (const auto& e : r.verdict->evaluations) {
      ++points;
      const bool both_small = e.a_bracket <= 1e-6 && e.nijenhuis <= 1e-6;
      const bool both_large = e.a_bracket >= 1e-3 && e.nijenhuis >= 1e-3;
      out.require(both_small || both_large, r.config.name + " mixed at " + e.point.to_string() + ": A " +
                                                num(e.a_bracket) + ", N " + num(e.nijenhuis));
    }
  }
  if (out.pass) out.detail = std::to_string(points) + " points, no mixed point";
  return out;
}

Outcome criterion5() {
  Outcome out;
  int gated = 0;
  for (const auto& r : builtin_reports()) {
    if (!r.verdict || !r.verdict->dw) continue;
    ++gated;
    const Verdict& v = *r.verdict;
    const ConditionReport& c2 = v.condition("c2");
    for (std::size_t k = 0; k < v.dw->residuals.size(); ++k) {
      out.require(v.dw->holds_at(k) == c2.holds_at(k),
                  r.config.name + ": block-form verdict differs at " + v.dw->points[k].to_string());
    }
  }
  // Random metrics are reported, not required: the block-form symmetry is not
  // equivalent to integrability for general metrics.
  int random_disagree = 0;
  for (const auto& r : random_reports())
    if (r.verdict && r.verdict->dw && !r.verdict->dw_agrees) ++random_disagree;
  if (out.pass) {
    out.detail = std::to_string(gated) + " gated built-ins agree pointwise; " + std::to_string(random_disagree) +
                 " of 20 random metrics disagree somewhere";
  }
  return out;
}

Outcome criterion6() {
  Outcome out;
  for (const char* name : {"so3", "sl2r", "so3xso3", "se3"}) {
    const BuiltinAlgebra a = builtin_algebra(name);
    out.require(validate_constants(a.constants).valid(), std::string(name) + " constants invalid");
    const Rational j = linear_jacobi_residual(a.constants);
    out.require(j.is_zero(), std::string(name) + " Jacobi residual " + j.to_string());
    const RunReport& r = builtin_report(name);
    if (!r.validation) {
      out.require(false, std::string(name) + ": no validation (" + r.message + ")");
      continue;
    }
    out.require(r.validation->antisymmetry.max_residual == 0.0, std::string(name) + " antisymmetry residual");
    out.require(r.validation->jacobi.max_residual == 0.0,
                std::string(name) + " Jacobi residual on grid " + num(r.validation->jacobi.max_residual));
    for (int rank : r.validation->ranks) out.require(rank == a.rank, std::string(name) + " rank changes");
  }
  if (out.pass) out.detail = "exact residual 0 and constant rank for so3, sl2r, so3xso3, se3";
  return out;
}

Outcome criterion7() {
  Outcome out;
  for (const char* name : {"so3", "sl2r", "so3xso3", "se3"}) {
    const Matrix k = to_matrix(killing_form(builtin_algebra(name).constants));
    out.require(k == oracle::killing(name), std::string(name) + " differs from the double-sum oracle");
  }
  const Matrix so3 = to_matrix(killing_form(builtin_algebra("so3").constants));
  out.require(so3 == Matrix(-2.0 * Matrix::Identity(3, 3)), "so3 is not -2I");
  const Matrix sl2 = to_matrix(killing_form(builtin_algebra("sl2r").constants));
  Matrix expected = Matrix::Zero(3, 3);
  expected(0, 0) = 8;
  expected(1, 2) = expected(2, 1) = 4;
  out.require(sl2 == expected, "sl2r values");
  const Matrix se3 = to_matrix(killing_form(builtin_algebra("se3").constants));
  out.require(numerical_rank(se3) < 6 && se3.determinant() == 0.0, "se3 Killing form is not singular");
  if (out.pass) out.detail = "so3 -2I, sl2r K(H,H)=8 K(E,F)=4, se3 rank " + std::to_string(numerical_rank(se3));
  return out;
}

Outcome criterion8() {
  Outcome out;
  const BuiltinAlgebra a = builtin_algebra("se3");
  const PoissonStructure ps = lie_poisson_structure(a);
  const MetricField m = se3_metric(0.0, 1.0);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double sharp_err = 0.0, gram_err = 0.0, det_err = 0.0, bracket_err = 0.0;
  const auto xi = frame_fields(ps, m, {});
  for (int trial = 0; trial < 10; ++trial) {
    Vector x(3), p(3);
    for (int i = 0; i < 3; ++i) {
      x(i) = u(rng);
      p(i) = u(rng);
    }
    p(1) += 2.0;
    Vector pt(6);
    pt << x, p;
    const Point at(std::vector<double>(pt.data(), pt.data() + 6));
    Vector w(6), expect(6);
    w << p, x;
    expect << x, p;
    sharp_err = std::max(sharp_err, max_abs(Vector(sharp(m, w, at) - expect)));
    w << Vector::Zero(3), p;
    expect << p, Vector::Zero(3);
    sharp_err = std::max(sharp_err, max_abs(Vector(sharp(m, w, at) - expect)));

    const DistributionFrame f = orthogonal_frame(ps, m, at, {});
    Matrix gram(2, 2);
    gram << 2 * x.dot(p), p.dot(p), p.dot(p), 0;
    gram_err = std::max(gram_err, max_abs(Matrix(f.gram - gram)));
    det_err = std::max(det_err, std::abs(f.gram.determinant() + std::pow(p.dot(p), 2)));
    for (double b : lie_bracket(xi[0], xi[1], at, {})) bracket_err = std::max(bracket_err, std::abs(b));
  }
  out.require(sharp_err <= 1e-12, "sharp error " + num(sharp_err));
  out.require(gram_err <= 1e-12, "gram error " + num(gram_err));
  out.require(det_err <= 1e-12, "gram determinant error " + num(det_err));
  out.require(bracket_err <= 1e-12, "[xi1, xi2] = " + num(bracket_err));

  const RunReport& r = builtin_report("se3");
  out.require(r.exit_code() == 0, "se3 exit code " + std::to_string(r.exit_code()) + " " + r.message);
  double surface = INFINITY;
  if (r.lie && r.lie->integral_surface) {
    surface = r.lie->integral_surface->max_residual;
    out.require(r.lie->integral_surface->points.size() == 25, "surface sample count");
  }
  out.require(surface <= 1e-9, "integral surface residual " + num(surface));

  Eigen::SelfAdjointEigenSolver<Matrix> es(se3_contravariant(1.0, 1.0));
  double eig_err = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double target = i < 3 ? (1.0 - std::sqrt(5.0)) / 2.0 : (1.0 + std::sqrt(5.0)) / 2.0;
    eig_err = std::max(eig_err, std::abs(es.eigenvalues()(i) - target));
  }
  out.require(eig_err <= 1e-12, "alpha=1 eigenvalue error " + num(eig_err));
  if (out.pass) {
    out.detail = "gram error " + num(gram_err) + ", bracket " + num(bracket_err) + ", surface " + num(surface) +
                 ", eigenvalue error " + num(eig_err) + ", exit 0";
  }
  return out;
}

Outcome criterion9() {
  Outcome out;
  for (const char* name : {"so3", "so3xso3"}) {
    const RunReport& r = builtin_report(name);
    out.require(r.exit_code() == 0, std::string(name) + " exit code " + std::to_string(r.exit_code()));
  }
  const RunReport& pair = builtin_report("so3xso3");
  out.require(pair.lie && pair.lie->casimir_bracket_max == 0.0, "so3xso3 Casimir brackets do not vanish");
  const RunReport& so3 = builtin_report("so3");
  double ray = INFINITY;
  if (so3.lie && so3.lie->integral_surface) ray = so3.lie->integral_surface->max_residual;
  out.require(ray <= 1e-9, "so3 ray residual " + num(ray));
  if (out.pass) out.detail = "both exit 0, Casimir bracket table zero, ray residual " + num(ray);
  return out;
}

Outcome criterion10() {
  Outcome out;
  const BuiltinAlgebra a = builtin_algebra("sl2r");
  const PoissonStructure ps = lie_poisson_structure(a);
  const MetricField m = MetricField::from_contravariant(a.contravariant_metric);
  const Point nilpotent{0, 0, 1};
  std::string raised = "nothing";
  try {
    orthogonal_frame(ps, m, nilpotent, {});
  } catch (const DegeneracyError& e) {
    raised = "DegeneracyError";
  } catch (const std::exception& e) {
    raised = std::string("other exception: ") + e.what();
  }
  out.require(raised == "DegeneracyError", "orthogonal_frame raised " + raised);

  ScenarioConfig c = builtin_scenario("sl2r");
  c.grid = Grid::uniform(nilpotent, 0.0, 1);
  const RunReport r = run(c);
  out.require(r.exit_code() == 3 && !r.message.empty(), "run at the nilpotent point exited " +
                                                           std::to_string(r.exit_code()));
  if (out.pass) out.detail = "DegeneracyError from the frame; run rejects the point with exit 3";
  return out;
}

Outcome criterion11() {
  Outcome out;
  test_support::ExprGenerator gen(11, 4);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::string text = gen(3);
    const dsl::Expr e = dsl::parse(text, 4);
    out.require(dsl::structurally_equal(e, dsl::parse(dsl::to_string(e), 4)), "round trip failed: " + text);
    const Point p = gen.point();
    const int axis = gen.axis();
    const double exact = dsl::evaluate(dsl::differentiate(e, axis), p);
    const double fd = test_support::central_difference(e, p, axis);
    const double rel = std::abs(exact - fd) / std::max(1.0, std::abs(exact));
    worst = std::max(worst, rel);
    out.require(rel <= 1e-7, "derivative mismatch " + num(rel) + " for " + text);
  }
  const dsl::Expr f = dsl::parse("(1/pi)*atan(x2)", 4);
  const dsl::Expr df = dsl::differentiate(f, 1);
  double atan_err = 0.0;
  for (double x2 : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
    const Point p{0.1, x2, 0.2, 0.3};
    atan_err = std::max(atan_err, std::abs(dsl::evaluate(df, p) - 1.0 / (std::numbers::pi * (1.0 + x2 * x2))));
  }
  out.require(atan_err <= 1e-15, "atan derivative error " + num(atan_err));
  if (out.pass) out.detail = "200 expressions, worst relative error " + num(worst) + ", atan error " + num(atan_err);
  return out;
}

Outcome criterion12() {
  Outcome out;
  for (const auto& name : builtin_scenario_names()) {
    setenv("POISSON_ORTHO_THREADS", "1", 1);
    const std::string a = report_json(run(builtin_scenario(name)));
    setenv("POISSON_ORTHO_THREADS", "0", 1);
    const std::string b = report_json(run(builtin_scenario(name)));
    const std::string c = report_json(builtin_report(name));
    out.require(a == b && b == c, name + " JSON differs between runs");
  }
  unsetenv("POISSON_ORTHO_THREADS");
  if (out.pass) out.detail = "7 built-ins byte-identical across three runs and thread counts";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"model4d-atan is non-integrable", criterion1},
      {"integrable baselines", criterion2},
      {"equivalent conditions agree pointwise", criterion3},
      {"A-bracket and Nijenhuis co-vanish", criterion4},
      {"block-form cross-check", criterion5},
      {"Lie-Poisson validity", criterion6},
      {"Killing forms", criterion7},
      {"se(3) reproduction", criterion8},
      {"compact semi-simple algebras", criterion9},
      {"degeneracy handling", criterion10},
      {"parser and differentiator", criterion11},
      {"deterministic JSON", criterion12},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %2zu %-40s %6.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), seconds,
                o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
