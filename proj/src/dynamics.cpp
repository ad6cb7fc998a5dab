#include "lvgraph/dynamics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "lvgraph/error.hpp"

namespace lvgraph {
namespace {

constexpr double kBlowUp = 1e12;

bool finite_and_bounded(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v) && std::fabs(v) <= kBlowUp; });
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> collapse(std::span<const double> xc, std::span<const std::int64_t> weights) {
  std::vector<double> y(weights.size(), 0.0);
  std::size_t pos = 0;
  for (std::size_t s = 0; s < weights.size(); ++s)
    for (std::int64_t i = 0; i < weights[s]; ++i) y[s] += xc[pos++];
  return y;
}

}  // namespace

double DriftReport::max_rel() const noexcept {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.max_rel);
  return m;
}

void DriftReport::merge(const DriftReport& other) {
  for (const auto& e : other.entries) {
    auto it = std::find_if(entries.begin(), entries.end(), [&](const DriftEntry& d) { return d.name == e.name; });
    if (it == entries.end()) {
      entries.push_back(e);
    } else if (e.max_rel > it->max_rel) {
      *it = e;
    }
  }
}

Trajectory integrate(const LVSystem& sys, std::span<const double> x0, double dt, std::size_t steps) {
  const std::size_t n = sys.dimension();
  if (x0.size() != n)
    throw Error(ErrorKind::DimensionMismatch,
                "initial point has " + std::to_string(x0.size()) + " entries, system has " + std::to_string(n));
  if (!(dt > 0.0)) throw Error(ErrorKind::BadParameter, "dt must be positive");

  Trajectory traj;
  traj.labels = sys.graph().vertices();
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.emplace_back(x0.begin(), x0.end());
  if (!finite_and_bounded(x0)) {
    traj.blew_up = true;
    return traj;
  }

  std::vector<double> x(x0.begin(), x0.end()), k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t step = 1; step <= steps; ++step) {
    vector_field(sys, x, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    vector_field(sys, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    vector_field(sys, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    vector_field(sys, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!finite_and_bounded(x)) {
      traj.blew_up = true;
      break;
    }
    traj.times.push_back(static_cast<double>(step) * dt);
    traj.states.push_back(x);
  }
  return traj;
}

DriftReport drift(const Trajectory& traj, const std::vector<Observable>& observables) {
  DriftReport report;
  for (const auto& obs : observables) {
    DriftEntry e;
    e.name = obs.name;
    if (!traj.states.empty()) e.initial = obs.evaluate(traj.states.front());
    for (const auto& x : traj.states) e.max_abs = std::max(e.max_abs, std::fabs(obs.evaluate(x) - e.initial));
    e.max_rel = e.max_abs / std::max(std::fabs(e.initial), 1e-12);
    report.entries.push_back(std::move(e));
  }
  return report;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
  out << 't';
  for (const auto& l : traj.labels) out << ',' << l;
  out << '\n';
  for (std::size_t r = 0; r < traj.states.size(); ++r) {
    out << format_double(traj.times[r]);
    for (double v : traj.states[r]) out << ',' << format_double(v);
    out << '\n';
  }
}

Observable hamiltonian_observable(const LVSystem& sys) {
  return {"H", [n = sys.dimension()](std::span<const double> x) {
            if (x.size() != n) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from system");
            double h = 0.0;
            for (double v : x) h += v;
            return h;
          }};
}

std::vector<Observable> casimir_observables(const LVSystem& sys) {
  std::vector<Observable> out;
  const auto basis = casimir_basis(sys);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::string name = "C" + std::to_string(i + 1) + "[";
    for (std::size_t s = 0; s < basis[i].exponents.size(); ++s)
      name += (s ? "," : "") + std::to_string(basis[i].exponents[s]);
    name += "]";
    out.push_back({std::move(name), [m = basis[i]](std::span<const double> x) { return m.evaluate(x); }});
  }
  return out;
}

std::vector<Observable> ratio_observables(const SkewGraph& g) {
  const DecloneResult d = declone(g);
  std::vector<Observable> out;
  for (const auto& cls : d.classes) {
    const std::size_t rep = g.index_of(cls.front());
    for (std::size_t j = 1; j < cls.size(); ++j) {
      const std::size_t member = g.index_of(cls[j]);
      out.push_back({cls[j] + "/" + cls.front(), [rep, member, label = cls.front()](std::span<const double> x) {
                       if (x[rep] == 0.0) throw Error(ErrorKind::ZeroDivision, "clone ratio undefined: " + label + " = 0");
                       return x[member] / x[rep];
                     }});
    }
  }
  return out;
}

std::vector<Observable> char_poly_observables(const PolyBuilder& L, std::span<const double> lambdas,
                                              std::span<const double> reference) {
  const PolyMatrix at_ref = L(reference);
  std::vector<Observable> out;
  for (double lambda : lambdas) {
    const auto c = char_poly(at_ref.evaluate(lambda));
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::fabs(v));
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (std::fabs(c[j]) < 1e-9 * scale) continue;
      out.push_back({"c" + std::to_string(j) + "@" + format_double(lambda),
                     [L, lambda, j](std::span<const double> x) { return char_poly(L(x).evaluate(lambda))[j]; }});
    }
  }
  return out;
}

std::vector<Observable> pullback(const std::vector<Observable>& observables, const LinearMap& phi) {
  std::vector<Observable> out;
  for (const auto& obs : observables)
    out.push_back({obs.name, [f = obs.evaluate, phi](std::span<const double> x) { return f(phi.apply(x)); }});
  return out;
}

DriftReport clone_decoupling_check(const SkewGraph& g, const WeightVector& w, std::span<const double> x0, double dt,
                                   std::size_t steps) {
  if (!is_irreducible(g)) throw Error(ErrorKind::PreconditionFailed, "base graph must be irreducible");
  const SkewGraph cloned = clone_graph(g, w);
  const auto ratios = ratio_observables(cloned);
  if (ratios.empty()) return {};
  if (x0.size() != cloned.order())
    throw Error(ErrorKind::DimensionMismatch,
                "initial point has " + std::to_string(x0.size()) + " entries, cloned system has " +
                    std::to_string(cloned.order()));
  for (const auto& r : ratios) r.evaluate(x0);
  return drift(integrate(LVSystem(cloned), x0, dt, steps), ratios);
}

double flow_commutation_check(const SkewGraph& g, const WeightVector& w, std::span<const double> x0, double dt,
                              std::size_t steps) {
  const auto weights = w.aligned(g);
  const SkewGraph cloned = clone_graph(g, w);
  const Trajectory xs = integrate(LVSystem(cloned), x0, dt, steps);
  const auto y0 = collapse(x0, weights);
  const Trajectory ys = integrate(LVSystem(g), y0, dt, steps);
  if (xs.blew_up || ys.blew_up) throw Error(ErrorKind::PreconditionFailed, "trajectory blew up");
  double worst = 0.0;
  for (std::size_t r = 0; r < xs.states.size(); ++r) {
    const auto chi = collapse(xs.states[r], weights);
    for (std::size_t s = 0; s < chi.size(); ++s) worst = std::max(worst, std::fabs(chi[s] - ys.states[r][s]));
  }
  return worst;
}

std::vector<double> fd_gradient(const Evaluator& f, std::span<const double> x) {
  std::vector<double> p(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) {
    const double h = 1e-6 * std::max(1.0, std::fabs(x[s]));
    p[s] = x[s] + h;
    const double up = f(p);
    p[s] = x[s] - h;
    const double down = f(p);
    p[s] = x[s];
    grad[s] = (up - down) / (2.0 * h);
  }
  return grad;
}

std::vector<double> jacobian_singular_values(const std::vector<Observable>& fs, std::span<const double> x) {
  if (fs.empty() || x.empty()) return {};
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(fs.size()), static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto g = fd_gradient(fs[i].evaluate, x);
    for (std::size_t s = 0; s < g.size(); ++s)
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)) = g[s];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

std::size_t numerical_rank(std::span<const double> singular_values, double threshold) {
  if (singular_values.empty()) return 0;
  const double top = *std::max_element(singular_values.begin(), singular_values.end());
  if (top == 0.0) return 0;
  return static_cast<std::size_t>(std::count_if(singular_values.begin(), singular_values.end(),
                                                [&](double v) { return v > threshold * top; }));
}

double poisson_bracket(const LVSystem& sys, const Evaluator& f, const Evaluator& g, std::span<const double> x) {
  const std::size_t n = sys.dimension();
  if (x.size() != n) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from system");
  const auto df = fd_gradient(f, x);
  const auto dg = fd_gradient(g, x);
  const auto a = sys.dense_adjacency();
  double sum = 0.0;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) sum += a[s * n + t] * x[s] * x[t] * df[s] * dg[t];
  return sum;
}

IntegrabilityReport integrability_certificate(const SkewGraph& g, const std::vector<Observable>& integrals,
                                              const std::vector<std::vector<double>>& points,
                                              CertificateOptions opts) {
  const LVSystem sys(g);
  IntegrabilityReport report;
  for (const auto& x0 : points) {
    report.drift.merge(drift(integrate(sys, x0, opts.dt, opts.steps), integrals));
    auto sv = jacobian_singular_values(integrals, x0);
    const std::size_t r = numerical_rank(sv, opts.rank_threshold);
    if (r >= report.rank || report.singular_values.empty()) {
      report.rank = r;
      report.singular_values = std::move(sv);
    }
    for (std::size_t i = 0; i < integrals.size(); ++i)
      for (std::size_t j = i + 1; j < integrals.size(); ++j)
        report.max_bracket = std::max(
            report.max_bracket, std::fabs(poisson_bracket(sys, integrals[i].evaluate, integrals[j].evaluate, x0)));
  }
  return report;
}

}  // namespace lvgraph
