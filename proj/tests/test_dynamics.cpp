#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "lvgraph/dynamics.hpp"
#include "lvgraph/error.hpp"
#include "lvgraph/families.hpp"

using namespace lvgraph;

namespace {

std::vector<double> random_point(std::mt19937_64& rng, std::size_t n, double lo = 0.5, double hi = 1.5) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> x(n);
  for (auto& v : x) v = d(rng);
  return x;
}

WeightVector aligned(const SkewGraph& g, std::vector<std::int64_t> w) { return WeightVector::from_aligned(g, w); }

}  // namespace

TEST_CASE("integrate basics") {
  const LVSystem km5(families::km(5));
  const std::vector<double> ones(5, 1.0);
  const Trajectory fixed = integrate(km5, ones, 1e-2, 100);
  CHECK(fixed.states.size() == 101);
  CHECK(fixed.times.back() == doctest::Approx(1.0));
  for (const auto& x : fixed.states) CHECK(x == ones);
  CHECK(fixed.labels == km5.graph().vertices());

  CHECK_THROWS_AS(integrate(km5, std::vector<double>(4, 1.0), 1e-3, 10), Error);
  CHECK_THROWS_AS(integrate(km5, ones, 0.0, 10), Error);
}

TEST_CASE("Hamiltonian of KM(3)") {
  const LVSystem km3(families::km(3));
  const std::vector<double> x0{1, 2, 3};
  const auto report = drift(integrate(km3, x0, 1e-3, 10000), {hamiltonian_observable(km3)});
  REQUIRE(report.entries.size() == 1);
  CHECK(report.entries[0].initial == 6.0);
  CHECK(report.entries[0].max_rel < 1e-10);
}

TEST_CASE("coordinate hyperplanes are invariant") {
  std::mt19937_64 rng(1);
  for (const SkewGraph& g : {families::km(6), families::bogo(7, 2), families::lv_n0(5)}) {
    auto x0 = random_point(rng, g.order());
    x0[2] = 0.0;
    const Trajectory t = integrate(LVSystem(g), x0, 1e-3, 2000);
    for (const auto& x : t.states) CHECK(std::fabs(x[2]) < 1e-12);
  }
}

TEST_CASE("blow-up stops the trajectory") {
  // x' = x * (a y), y constant-ish growth: a 2-vertex arrow from a large start.
  const SkewGraph arrow = families::open_km(2);
  const Trajectory t = integrate(LVSystem(arrow), std::vector<double>{1e6, -1e6}, 1.0, 100);
  CHECK(t.blew_up);
  CHECK(t.states.size() < 101);
  for (const auto& x : t.states)
    for (double v : x) CHECK(std::isfinite(v));
}

TEST_CASE("drift of conserved quantities") {
  std::mt19937_64 rng(2);
  const LVSystem km5(families::km(5));
  const auto traj = integrate(km5, random_point(rng, 5), 1e-3, 10000);
  CHECK(drift(traj, {hamiltonian_observable(km5)}).max_rel() < 1e-6);
  CHECK(drift(traj, casimir_observables(km5)).max_rel() < 1e-6);
  const Observable constant{"one", [](std::span<const double>) { return 1.0; }};
  const auto c = drift(traj, {constant});
  CHECK(c.entries[0].max_abs == 0.0);
  CHECK(c.entries[0].max_rel == 0.0);
}

TEST_CASE("family conservation") {
  std::mt19937_64 rng(3);
  std::vector<SkewGraph> graphs;
  for (int n = 3; n <= 8; ++n) {
    graphs.push_back(families::km(n));
    graphs.push_back(families::lv_n0(n));
    for (int k = 2; 2 * k < n; ++k) graphs.push_back(families::bogo(n, k));
  }
  for (const auto& g : graphs) {
    const LVSystem sys(g);
    const auto traj = integrate(sys, random_point(rng, g.order()), 1e-3, 10000);
    REQUIRE_FALSE(traj.blew_up);
    auto obs = casimir_observables(sys);
    obs.push_back(hamiltonian_observable(sys));
    CHECK(drift(traj, obs).max_rel() < 1e-6);
  }
}

TEST_CASE("char-poly integrals of B(n,k)") {
  std::mt19937_64 rng(4);
  const std::vector<double> lambdas{-2, -1, 1, 2, 3};
  for (int n = 3; n <= 7; ++n)
    for (int k = 1; 2 * k < n; ++k) {
      const LVSystem sys(families::bogo(n, k));
      const auto x0 = random_point(rng, static_cast<std::size_t>(n));
      const PolyBuilder L = [n, k](std::span<const double> x) { return bogo_lax(n, k, x).L; };
      const auto obs = char_poly_observables(L, lambdas, x0);
      CHECK_FALSE(obs.empty());
      CHECK(drift(integrate(sys, x0, 1e-3, 10000), obs).max_rel() < 1e-5);
    }
}

TEST_CASE("clone decoupling") {
  const SkewGraph km4 = families::km(4);
  std::mt19937_64 rng(5);
  const auto report = clone_decoupling_check(km4, aligned(km4, {2, 1, 1, 1}), random_point(rng, 5), 1e-3, 10000);
  REQUIRE(report.entries.size() == 1);
  CHECK(report.entries[0].name == "1#2/1#1");
  CHECK(report.max_rel() < 1e-8);

  CHECK(clone_decoupling_check(km4, WeightVector::ones(km4), random_point(rng, 4), 1e-3, 100).entries.empty());

  const std::vector<double> equal{0.7, 0.7, 1.1, 0.9, 1.3};
  const auto same = clone_decoupling_check(km4, aligned(km4, {2, 1, 1, 1}), equal, 1e-3, 5000);
  CHECK(same.entries[0].initial == 1.0);
  CHECK(same.entries[0].max_abs == 0.0);

  const std::vector<double> zero{0.0, 0.7, 1.1, 0.9, 1.3};
  CHECK_THROWS_AS(clone_decoupling_check(km4, aligned(km4, {2, 1, 1, 1}), zero, 1e-3, 10), Error);
  const SkewGraph reducible = clone_graph(km4, aligned(km4, {2, 1, 1, 1}));
  CHECK_THROWS_AS(clone_decoupling_check(reducible, WeightVector::ones(reducible), random_point(rng, 5), 1e-3, 10),
                  Error);
}

TEST_CASE("flow commutation") {
  std::mt19937_64 rng(6);
  const SkewGraph km4 = families::km(4);
  CHECK(flow_commutation_check(km4, aligned(km4, {2, 1, 1, 1}), random_point(rng, 5), 1e-3, 10000) < 1e-6);
  CHECK(flow_commutation_check(km4, WeightVector::ones(km4), random_point(rng, 4), 1e-3, 10000) == 0.0);
  const SkewGraph b52 = families::bogo(5, 2);
  CHECK(flow_commutation_check(b52, aligned(b52, {1, 2, 1, 1, 2}), random_point(rng, 7), 1e-3, 10000) < 1e-6);
}

TEST_CASE("pullback transfer of first integrals") {
  std::mt19937_64 rng(7);
  const SkewGraph base = families::km(5);
  const SkewGraph cloned = clone_graph(base, aligned(base, {2, 1, 3, 1, 1}));
  const LinearMap chi = decloning_lvmap(cloned);
  const auto x0 = random_point(rng, cloned.order());
  const std::vector<double> lambdas{-2, -1, 1, 2, 3};
  std::vector<Observable> base_obs = casimir_observables(LVSystem(base));
  base_obs.push_back(hamiltonian_observable(LVSystem(base)));
  for (auto& o : char_poly_observables([](std::span<const double> y) { return bogo_lax(5, 1, y).L; }, lambdas,
                                       chi.apply(x0)))
    base_obs.push_back(std::move(o));

  const auto on_base = drift(integrate(LVSystem(base), chi.apply(x0), 1e-3, 10000), base_obs);
  const auto on_clone = drift(integrate(LVSystem(cloned), x0, 1e-3, 10000), pullback(base_obs, chi));
  REQUIRE(on_base.entries.size() == on_clone.entries.size());
  const double tau = std::max(on_base.max_rel(), 1e-14);
  CHECK(on_clone.max_rel() < tau * 11.0);
}

TEST_CASE("finite differences and brackets") {
  const Evaluator f = [](std::span<const double> x) { return x[0] * x[0] * x[1]; };
  const std::vector<double> x{1.5, -2.0};
  const auto g = fd_gradient(f, x);
  CHECK(g[0] == doctest::Approx(2 * 1.5 * -2.0).epsilon(1e-8));
  CHECK(g[1] == doctest::Approx(1.5 * 1.5).epsilon(1e-8));

  // {x_1, x_2} = a_12 x_1 x_2 for coordinate functions.
  const LVSystem arrow(families::open_km(2));
  const Evaluator x1 = [](std::span<const double> p) { return p[0]; };
  const Evaluator x2 = [](std::span<const double> p) { return p[1]; };
  const std::vector<double> p{0.7, 1.3};
  CHECK(poisson_bracket(arrow, x1, x2, p) == doctest::Approx(0.7 * 1.3));
  CHECK(poisson_bracket(arrow, x2, x1, p) == doctest::Approx(-0.7 * 1.3));
}

TEST_CASE("integrability certificates") {
  std::mt19937_64 rng(8);
  const std::vector<double> lambdas{-2, -1, 1, 2, 3};
  CertificateOptions opts;
  opts.steps = 2000;

  SUBCASE("KM(5)") {
    const SkewGraph g = families::km(5);
    const LVSystem sys(g);
    std::vector<Observable> ints{hamiltonian_observable(sys)};
    for (auto& c : casimir_observables(sys)) ints.push_back(c);
    std::vector<std::vector<double>> pts{random_point(rng, 5), random_point(rng, 5)};
    for (auto& c : char_poly_observables([](std::span<const double> x) { return bogo_lax(5, 1, x).L; }, lambdas,
                                         pts[0]))
      ints.push_back(c);
    const auto report = integrability_certificate(g, ints, pts, opts);
    CHECK(report.rank == 3);
    CHECK(report.max_bracket < 1e-5);
    CHECK(report.drift.max_rel() < 1e-6);
  }
  SUBCASE("a constant integral has rank 0") {
    const SkewGraph g = families::km(4);
    const Observable constant{"one", [](std::span<const double>) { return 1.0; }};
    const auto report = integrability_certificate(g, {constant}, {random_point(rng, 4)}, opts);
    CHECK(report.rank == 0);
    CHECK(report.max_bracket == 0.0);
  }
}

TEST_CASE("CSV export") {
  const LVSystem km3(families::km(3));
  const Trajectory t = integrate(km3, std::vector<double>{1, 2, 3}, 0.1, 2);
  std::ostringstream out;
  write_csv(t, out);
  std::istringstream in(out.str());
  std::string header, row0;
  std::getline(in, header);
  std::getline(in, row0);
  CHECK(header == "t,1,2,3");
  CHECK(row0 == "0,1,2,3");
  std::string row1;
  std::getline(in, row1);
  CHECK(row1.rfind("0.10000000000000001,", 0) == 0);
}
