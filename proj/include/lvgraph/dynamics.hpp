#pragma once

#include <cstddef>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lvgraph/graph.hpp"
#include "lvgraph/lax.hpp"
#include "lvgraph/lv.hpp"

namespace lvgraph {

using Evaluator = std::function<double(std::span<const double>)>;

struct Observable {
  std::string name;
  Evaluator evaluate;
};

/// Fixed-step samples of an LV flow. times[0] = 0 and states[0] = x0.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<std::string> labels;
  /// Integration stopped early because a coordinate left [-1e12, 1e12] or
  /// became non-finite; the offending step is not stored.
  bool blew_up = false;

  std::size_t dimension() const noexcept { return labels.size(); }
};

struct DriftEntry {
  std::string name;
  double initial = 0.0;
  double max_abs = 0.0;
  /// max_abs / max(|initial|, 1e-12)
  double max_rel = 0.0;
};

struct DriftReport {
  std::vector<DriftEntry> entries;

  double max_rel() const noexcept;
  /// Appends other's entries, or merges by name keeping the worst deviation.
  void merge(const DriftReport& other);
};

/// Classical RK4 with fixed step. Throws Error(DimensionMismatch) or
/// Error(BadParameter) for dt <= 0.
Trajectory integrate(const LVSystem& sys, std::span<const double> x0, double dt, std::size_t steps);

DriftReport drift(const Trajectory& traj, const std::vector<Observable>& observables);

/// CSV with header `t,<labels>` and 17 significant digits.
void write_csv(const Trajectory& traj, std::ostream& out);

Observable hamiltonian_observable(const LVSystem& sys);
std::vector<Observable> casimir_observables(const LVSystem& sys);

/// x_{s_j} / x_{s_1} for every decloning class of g and j >= 2, named
/// "<member>/<representative>".
std::vector<Observable> ratio_observables(const SkewGraph& g);

/// Char-poly coefficients of L(lambda) as observables, one per (lambda,
/// coefficient). Coefficients below 1e-9 of the largest at reference are
/// dropped: they vanish identically for the cyclic pairs and carry no
/// information about drift.
std::vector<Observable> char_poly_observables(const PolyBuilder& L, std::span<const double> lambdas,
                                              std::span<const double> reference);

/// Composes each observable with a linear map: (phi^* F)(x) = F(phi x).
std::vector<Observable> pullback(const std::vector<Observable>& observables, const LinearMap& phi);

/// Integrates LV(clone(g, w)) from x0 (clone coordinates) and reports the
/// drift of every clone ratio. Throws Error(PreconditionFailed) unless g is
/// irreducible, Error(ZeroDivision) if a class representative starts at 0.
DriftReport clone_decoupling_check(const SkewGraph& g, const WeightVector& w, std::span<const double> x0, double dt,
                                   std::size_t steps);

/// max_t |chi(x(t)) - y(t)|_inf where x solves the cloned system from x0 and
/// y solves the base system from chi(x0).
double flow_commutation_check(const SkewGraph& g, const WeightVector& w, std::span<const double> x0, double dt,
                              std::size_t steps);

struct CertificateOptions {
  double dt = 1e-3;
  std::size_t steps = 10000;
  double rank_threshold = 1e-8;
};

struct IntegrabilityReport {
  DriftReport drift;
  /// Largest numerical Jacobian rank over the points.
  std::size_t rank = 0;
  std::vector<double> singular_values;
  /// max |{F, G}| over pairs and points.
  double max_bracket = 0.0;
};

/// Central-difference gradient with step 1e-6 * max(1, |x_s|).
std::vector<double> fd_gradient(const Evaluator& f, std::span<const double> x);

/// Singular values of the finite-difference Jacobian, descending.
std::vector<double> jacobian_singular_values(const std::vector<Observable>& fs, std::span<const double> x);
std::size_t numerical_rank(std::span<const double> singular_values, double threshold);

/// {F, G} = sum_{s,t} a_{s,t} x_s x_t dF/dx_s dG/dx_t.
double poisson_bracket(const LVSystem& sys, const Evaluator& f, const Evaluator& g, std::span<const double> x);

/// Drift of each integral along trajectories from every point, Jacobian rank
/// and pairwise brackets at the same points.
IntegrabilityReport integrability_certificate(const SkewGraph& g, const std::vector<Observable>& integrals,
                                              const std::vector<std::vector<double>>& points,
                                              CertificateOptions opts = {});

}  // namespace lvgraph
