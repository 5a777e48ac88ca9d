#include "poisson_ortho/integrability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

#include "poisson_ortho/errors.hpp"

namespace poisson_ortho {

namespace {

Matrix matrix_at(const TensorField& f, const Point& p) { return to_matrix(f(p), f.dim()); }

// Fields shared by every point of a run.
struct Context {
  Context(const PoissonStructure& ps_, const MetricField& m_, const DerivativeScheme& scheme_)
      : ps(ps_), m(m_), scheme(scheme_) {
    ps.check_shape();
    if (m.dim() != ps.dim()) throw std::invalid_argument("metric and Poisson tensor dimensions differ");
    coframe = coframe_fields(ps, scheme);
    for (const auto& w : coframe) frame.push_back(sharp_field(m, w));
    if (ps.codim() > 0 && ps.expected_rank > 0) {
      v = projector_field(ps, m, scheme, true);
      h = projector_field(ps, m, scheme, false);
      for (const auto& xi : frame) h_frame.push_back(apply(*h, xi));
    }
  }

  PoissonStructure ps;
  MetricField m;
  DerivativeScheme scheme;
  std::vector<TensorField> coframe;
  std::vector<TensorField> frame;
  std::optional<TensorField> v;
  std::optional<TensorField> h;
  std::vector<TensorField> h_frame;
};

// Pointwise tensors reused by several criteria.
struct Local {
  Matrix g;
  Matrix g_inv;
  Matrix P;
  Christoffel gamma{1};
  MatrixList nabla_P;
  std::vector<Vector> omega;
  std::vector<Vector> xi;
  std::vector<Matrix> nabla_omega;
  std::vector<Matrix> nabla_xi;
};

Local local_data(const Context& c, const Point& p) {
  Local l;
  l.g = c.m.at(p);
  l.g_inv = inverse_metric(c.m, p);
  l.gamma = christoffel(l.g_inv, metric_partials(c.m, p, c.scheme));
  l.P = matrix_at(c.ps.bivector, p);
  l.nabla_P = covariant_derivative_bivector(l.gamma, l.P, partial_derivatives(c.ps.bivector, p, c.scheme));
  for (std::size_t i = 0; i < c.coframe.size(); ++i) {
    l.omega.push_back(to_vector(c.coframe[i](p)));
    l.xi.push_back(to_vector(c.frame[i](p)));
    l.nabla_omega.push_back(
        covariant_derivative_oneform(l.gamma, l.omega.back(), partial_derivatives(c.coframe[i], p, c.scheme)));
    l.nabla_xi.push_back(
        covariant_derivative_vector(l.gamma, l.xi.back(), partial_derivatives(c.frame[i], p, c.scheme)));
  }
  return l;
}

Theorem1Residuals theorem1_at(const Context& c, const Local& l, const Point& p) {
  const int n = c.ps.dim();
  Theorem1Residuals r;
  const std::size_t d = l.omega.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Vector along = l.nabla_omega[j].transpose() * l.xi[i] - l.nabla_omega[i].transpose() * l.xi[j];
      r.c2 = std::max(r.c2, max_abs(Vector(l.P * along)));

      Vector c3 = Vector::Zero(n);
      for (int t = 0; t < n; ++t) {
        double acc = 0.0;
        for (int lam = 0; lam < n; ++lam)
          for (int a = 0; a < n; ++a) {
            if (l.g_inv(lam, a) == 0.0) continue;
            for (int s = 0; s < n; ++s) {
              const double wedge = l.omega[i](s) * l.omega[j](a) - l.omega[i](a) * l.omega[j](s);
              acc += l.g_inv(lam, a) * l.nabla_P[static_cast<std::size_t>(lam)](t, s) * wedge;
            }
          }
        c3(t) = acc;
      }
      r.c3 = std::max(r.c3, max_abs(c3));

      const Vector torsion = l.nabla_xi[j].transpose() * l.xi[i] - l.nabla_xi[i].transpose() * l.xi[j];
      r.c4 = std::max(r.c4, max_abs(Vector(l.P * l.g * torsion)));

      const Vector bracket = to_vector(lie_bracket(c.frame[i], c.frame[j], p, c.scheme));
      r.c5 = std::max(r.c5, max_abs(Vector(l.P * flat(c.m, bracket, p))));
    }
  return r;
}

CorollaryResiduals corollaries_at(const Context& c, const Local& l, const Point& p) {
  const int n = c.ps.dim();
  CorollaryResiduals r;
  const std::size_t d = l.omega.size();

  std::vector<Matrix> along_xi;
  for (std::size_t i = 0; i < d; ++i) {
    Matrix sum = Matrix::Zero(n, n);
    for (int lam = 0; lam < n; ++lam) sum += l.xi[i](lam) * l.nabla_P[static_cast<std::size_t>(lam)];
    along_xi.push_back(sum);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) r.parallel_bivector = std::max(r.parallel_bivector, max_abs(Vector(along_xi[i] * l.omega[j])));

  if (c.ps.expected_rank > 0) {
    for (int col : leaf_pivots(l.P, c.ps.expected_rank)) {
      const TensorField t = bivector_column(c.ps.bivector, col);
      const Matrix nabla_t =
          covariant_derivative_vector(l.gamma, to_vector(t(p)), partial_derivatives(t, p, c.scheme));
      for (std::size_t i = 0; i < d; ++i) {
        const Vector dt = nabla_t.transpose() * l.xi[i];
        for (std::size_t j = 0; j < d; ++j) r.leaf_preserved = std::max(r.leaf_preserved, std::abs(l.omega[j].dot(dt)));
      }
    }
  }

  for (std::size_t i = 0; i < d; ++i) {
    r.parallel_coframe = std::max(r.parallel_coframe, max_abs(l.nabla_omega[i]));
    const Matrix half = l.nabla_xi[i] * l.g;
    r.killing = std::max(r.killing, max_abs(Matrix(half + half.transpose())));
    r.laplacian = std::max(r.laplacian, std::abs(laplacian_casimir(c.m, c.ps.casimirs[i], p, c.scheme)));
  }
  return r;
}

bool is_dw_block(const Matrix& P, int transversal, double sign) {
  const int n = static_cast<int>(P.rows());
  const int k = (n - transversal) / 2;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double expected = 0.0;
      if (a >= transversal && b >= transversal) {
        const int i = a - transversal;
        const int j = b - transversal;
        if (i < k && j == i + k) expected = -sign;
        if (i >= k && j == i - k) expected = sign;
      }
      if (P(a, b) != expected) return false;
    }
  return true;
}

double dw_residual(const Christoffel& gamma, int transversal) {
  const int n = gamma.dim();
  double worst = 0.0;
  for (int I = 0; I < transversal; ++I)
    for (int J = I + 1; J < transversal; ++J)
      for (int t = transversal; t < n; ++t) worst = std::max(worst, std::abs(gamma.first(J, I, t) - gamma.first(I, J, t)));
  return worst;
}

PointEvaluation evaluate_at(const Context& c, const Point& p, bool with_dw) {
  const int n = c.ps.dim();
  PointEvaluation e;
  e.point = p;
  e.frobenius_vector = Vector::Zero(n);
  const DistributionFrame frame = orthogonal_frame(c.ps, c.m, p, c.scheme);
  e.gram = frame.gram;
  const Local l = local_data(c, p);
  e.theorem1 = theorem1_at(c, l, p);
  e.corollaries = corollaries_at(c, l, p);

  const std::size_t d = c.frame.size();
  if (c.v && d > 1) {
    const Matrix v = matrix_at(*c.v, p);
    const Matrix A = l.P * l.g;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        const Vector frob = v * to_vector(lie_bracket(c.h_frame[i], c.h_frame[j], p, c.scheme));
        if (max_abs(frob) > e.frobenius) {
          e.frobenius = max_abs(frob);
          e.frobenius_vector = frob;
        }
        e.nijenhuis = std::max(e.nijenhuis, max_abs(nijenhuis_torsion(*c.v, c.frame[i], c.frame[j], p, c.scheme)));
        const Vector bracket = to_vector(lie_bracket(c.frame[i], c.frame[j], p, c.scheme));
        e.a_bracket = std::max(e.a_bracket, max_abs(Vector(A * bracket)));
      }
  }

  if (with_dw) {
    const auto transversal = dw_transversal_count(c.ps, p, c.scheme);
    if (!transversal) throw PreconditionError("Poisson tensor is not in Darboux-Weinstein block form at " + p.to_string());
    e.dw = dw_residual(l.gamma, *transversal);
  }
  return e;
}

template <typename Fn>
std::vector<PointEvaluation> parallel_evaluate(const std::vector<Point>& points, Fn fn) {
  std::vector<std::optional<PointEvaluation>> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = fn(points[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::size_t>(points.size(), 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<PointEvaluation> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*results[i]));
  }
  return out;
}

}  // namespace

double default_tolerance(const DerivativeScheme& scheme) {
  return scheme.kind == DerivativeScheme::Kind::Symbolic ? 1e-6 : 1e-4;
}

unsigned thread_count() {
  unsigned n = 0;
  if (const char* env = std::getenv("POISSON_ORTHO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

TensorField apply(const TensorField& j, const TensorField& x) {
  if (j.slots() != std::vector<Slot>{Slot::Upper, Slot::Lower}) throw std::invalid_argument("apply needs a (1,1) tensor");
  if (!x.is_vector() || x.dim() != j.dim()) throw std::invalid_argument("apply needs a vector field of equal dimension");
  auto eval = [j, x](const Point& p) {
    return to_components(Vector(to_matrix(j(p), j.dim()) * to_vector(x(p))));
  };
  TensorField::DerivativeFactory derivative;
  if (j.has_exact_derivative() && x.has_exact_derivative()) {
    derivative = [j, x](int axis) { return sum(apply(j.exact_derivative(axis), x), apply(j, x.exact_derivative(axis))); };
  }
  return TensorField(j.dim(), {Slot::Upper}, eval, derivative);
}

Vector frobenius_curvature(const PoissonStructure& ps, const MetricField& m, const TensorField& gamma,
                           const TensorField& eta, const Point& p, const DerivativeScheme& scheme) {
  const TensorField h = projector_field(ps, m, scheme, false);
  const Matrix v = projectors(ps, m, p, scheme).v;
  return v * to_vector(lie_bracket(apply(h, gamma), apply(h, eta), p, scheme));
}

Vector nijenhuis_torsion(const TensorField& j, const TensorField& x, const TensorField& y, const Point& p,
                         const DerivativeScheme& scheme) {
  const TensorField jx = apply(j, x);
  const TensorField jy = apply(j, y);
  const Matrix J = matrix_at(j, p);
  const Vector a = to_vector(lie_bracket(jx, jy, p, scheme));
  const Vector b = to_vector(lie_bracket(jx, y, p, scheme));
  const Vector c = to_vector(lie_bracket(x, jy, p, scheme));
  const Vector d = to_vector(lie_bracket(x, y, p, scheme));
  return a - J * b - J * c + J * (J * d);
}

Theorem1Residuals theorem1_residuals(const PoissonStructure& ps, const MetricField& m, const Point& p,
                                     const DerivativeScheme& scheme) {
  const Context c(ps, m, scheme);
  return theorem1_at(c, local_data(c, p), p);
}

CorollaryResiduals corollary_checks(const PoissonStructure& ps, const MetricField& m, const Point& p,
                                    const DerivativeScheme& scheme) {
  const Context c(ps, m, scheme);
  return corollaries_at(c, local_data(c, p), p);
}

std::optional<int> dw_transversal_count(const PoissonStructure& ps, const Point& p, const DerivativeScheme& scheme) {
  const Matrix P = matrix_at(ps.bivector, p);
  const int transversal = ps.dim() - ps.expected_rank;
  if (transversal < 0 || !(is_dw_block(P, transversal, 1.0) || is_dw_block(P, transversal, -1.0))) return std::nullopt;
  for (const auto& dP : partial_derivatives(ps.bivector, p, scheme)) {
    for (double v : dP)
      if (v != 0.0) return std::nullopt;
  }
  return transversal;
}

double dw_symmetry(const PoissonStructure& ps, const MetricField& m, const Point& p, const DerivativeScheme& scheme) {
  const auto transversal = dw_transversal_count(ps, p, scheme);
  if (!transversal) throw PreconditionError("Poisson tensor is not in Darboux-Weinstein block form at " + p.to_string());
  return dw_residual(christoffel(m, p, scheme), *transversal);
}

PointEvaluation evaluate_point(const PoissonStructure& ps, const MetricField& m, const Point& p,
                               const DerivativeScheme& scheme, bool with_dw) {
  const Context c(ps, m, scheme);
  return evaluate_at(c, p, with_dw);
}

const ConditionReport& Verdict::condition(const std::string& id) const {
  for (const auto& r : conditions)
    if (r.id == id) return r;
  for (const auto& r : corollaries)
    if (r.id == id) return r;
  throw std::out_of_range("no condition '" + id + "'");
}

Verdict evaluate_verdict(const PoissonStructure& ps, const MetricField& m, const Grid& grid,
                         const DerivativeScheme& scheme, double tolerance) {
  grid.validate();
  if (grid.dim() != ps.dim()) throw std::invalid_argument("grid dimension does not match the chart");
  const Context c(ps, m, scheme);
  const std::vector<Point> points = sample(grid);

  bool with_dw = true;
  for (const auto& p : points) {
    if (!dw_transversal_count(ps, p, scheme)) {
      with_dw = false;
      break;
    }
  }

  Verdict v;
  v.evaluations = parallel_evaluate(points, [&](const Point& p) { return evaluate_at(c, p, with_dw); });

  auto column = [&](auto getter) {
    std::vector<double> out;
    out.reserve(v.evaluations.size());
    for (const auto& e : v.evaluations) out.push_back(getter(e));
    return out;
  };
  auto report = [&](const char* id, const char* description, std::vector<double> residuals) {
    return ConditionReport::from_residuals(id, description, points, std::move(residuals), tolerance);
  };

  v.conditions.push_back(report("c2", "P^{ts}(nabla_{xi_i} omega^j_s - nabla_{xi_j} omega^i_s)",
                                column([](const PointEvaluation& e) { return e.theorem1.c2; })));
  v.conditions.push_back(report("c3", "g^{la}(nabla_l P)^{ts}(omega^i_s omega^j_a - omega^i_a omega^j_s)",
                                column([](const PointEvaluation& e) { return e.theorem1.c3; })));
  v.conditions.push_back(report("c4", "P^{ts} g_{sl}(nabla_{xi_i} xi_j - nabla_{xi_j} xi_i)^l",
                                column([](const PointEvaluation& e) { return e.theorem1.c4; })));
  v.conditions.push_back(report("c5", "P [omega^i, omega^j]_g",
                                column([](const PointEvaluation& e) { return e.theorem1.c5; })));
  v.conditions.push_back(report("frobenius", "v([h xi_i, h xi_j])",
                                column([](const PointEvaluation& e) { return e.frobenius; })));
  v.conditions.push_back(report("nijenhuis", "N_v(xi_i, xi_j)",
                                column([](const PointEvaluation& e) { return e.nijenhuis; })));
  v.conditions.push_back(report("a_bracket", "A[xi_i, xi_j]",
                                column([](const PointEvaluation& e) { return e.a_bracket; })));

  v.corollaries.push_back(report("parallel_bivector", "(nabla_{xi_i} P) omega^j",
                                 column([](const PointEvaluation& e) { return e.corollaries.parallel_bivector; })));
  v.corollaries.push_back(report("leaf_preserved", "omega^j(nabla_{xi_i} t_a)",
                                 column([](const PointEvaluation& e) { return e.corollaries.leaf_preserved; })));
  v.corollaries.push_back(report("parallel_coframe", "nabla omega^i",
                                 column([](const PointEvaluation& e) { return e.corollaries.parallel_coframe; })));
  v.corollaries.push_back(report("killing", "L_{xi_i} g",
                                 column([](const PointEvaluation& e) { return e.corollaries.killing; })));
  v.corollaries.push_back(report("laplacian", "Laplacian of c^i",
                                 column([](const PointEvaluation& e) { return e.corollaries.laplacian; })));

  std::vector<double> covanish;
  for (const auto& e : v.evaluations) covanish.push_back((e.a_bracket <= tolerance) == (e.nijenhuis <= tolerance) ? 0.0 : 1.0);
  v.theorem2 = ConditionReport::from_residuals("theorem2", "A[xi_i,xi_j] and N_v(xi_i,xi_j) vanish together", points,
                                               covanish, 0.0);

  for (const auto& r : v.conditions) v.integrable = v.integrable && r.holds;

  for (std::size_t i = 0; i < points.size(); ++i) {
    const bool reference = v.conditions.front().holds_at(i);
    for (const auto& r : v.conditions) {
      if (r.holds_at(i) != reference) {
        v.inconsistencies.push_back(r.id + " disagrees with " + v.conditions.front().id + " at " + points[i].to_string());
      }
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (v.corollaries[k].holds_at(i) && !reference) {
        v.inconsistencies.push_back(v.corollaries[k].id + " holds where the conditions fail at " + points[i].to_string());
      }
    }
  }
  if (!v.theorem2.holds) v.inconsistencies.push_back("A-bracket and Nijenhuis torsion do not vanish together");
  v.consistent = v.inconsistencies.empty();

  if (with_dw) {
    v.dw = report("dw", "Gamma_{JIt} - Gamma_{IJt}", column([](const PointEvaluation& e) { return *e.dw; }));
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (v.dw->holds_at(i) != v.conditions.front().holds_at(i)) v.dw_agrees = false;
    }
  }
  return v;
}

Verdict verdict(const PoissonStructure& ps, const MetricField& m, const Grid& grid, const DerivativeScheme& scheme,
                double tolerance) {
  Verdict v = evaluate_verdict(ps, m, grid, scheme, tolerance);
  if (!v.consistent) throw InvalidRunError("integrability conditions disagree: " + v.inconsistencies.front());
  return v;
}

}  // namespace poisson_ortho
