// lvgraph: command-line front end for skew-symmetric graphs and their
// Lotka-Volterra systems.
//
// Exit codes: 0 success, 1 a requested check failed, 2 bad usage or input.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "lvgraph/dynamics.hpp"
#include "lvgraph/error.hpp"
#include "lvgraph/families.hpp"
#include "lvgraph/json_io.hpp"
#include "lvgraph/lax.hpp"
#include "lvgraph/lv.hpp"

namespace {

using lvgraph::Error;
using lvgraph::ErrorKind;
using lvgraph::io::Json;

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Output {
  std::string path;

  void write(const Json& j) const {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::BadParameter, "cannot write " + path);
    out << text;
  }
};

std::vector<double> parse_doubles(const std::string& csv, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadParameter, what + ": not a number: '" + item + "'");
    }
  }
  return out;
}

std::vector<std::int64_t> parse_ints(const std::string& csv, const std::string& what) {
  std::vector<std::int64_t> out;
  for (double v : parse_doubles(csv, what)) {
    if (v != static_cast<double>(static_cast<std::int64_t>(v)))
      throw Error(ErrorKind::BadParameter, what + ": not an integer");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

std::vector<std::string> split(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Json permutation_json(const lvgraph::SkewGraph& g, const lvgraph::Permutation& p) {
  Json j = Json::object();
  for (std::size_t s = 0; s < p.size(); ++s) j[g.label(s)] = g.label(p[s]);
  return j;
}

Json map_json(const lvgraph::GraphMap& m) {
  Json j = Json::object();
  for (std::size_t s = 0; s < m.domain().order(); ++s) j[m.domain().label(s)] = m.codomain().label(m(s));
  return j;
}

Json drift_json(const lvgraph::DriftReport& r, double tol) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(
        {{"name", e.name}, {"initial", e.initial}, {"max_abs", e.max_abs}, {"max_rel", e.max_rel}});
  return {{"entries", std::move(entries)}, {"max_rel", r.max_rel()}, {"tolerance", tol},
          {"pass", r.max_rel() < tol}};
}

// If g declones to B(n,k) with vertices in the family's order, returns (n, k).
std::optional<std::pair<int, int>> match_bogo(const lvgraph::SkewGraph& quotient) {
  const int n = static_cast<int>(quotient.order());
  for (int k = 1; 2 * k < n; ++k)
    if (lvgraph::families::bogo(n, k).adjacency() == quotient.adjacency()) return std::make_pair(n, k);
  return std::nullopt;
}

lvgraph::SkewGraph family_graph(const std::string& name, const std::vector<int>& params) {
  namespace fam = lvgraph::families;
  auto need = [&](std::size_t count) {
    if (params.size() != count)
      throw Error(ErrorKind::BadParameter, name + " takes " + std::to_string(count) + " parameter(s)");
  };
  if (name == "km") {
    need(1);
    return fam::km(params[0]);
  }
  if (name == "bogo") {
    need(2);
    return fam::bogo(params[0], params[1]);
  }
  if (name == "lv_n0") {
    need(1);
    return fam::lv_n0(params[0]);
  }
  if (name == "open_km") {
    need(1);
    return fam::open_km(params[0]);
  }
  throw Error(ErrorKind::BadParameter, "unknown family '" + name + "' (km, bogo, lv_n0, open_km)");
}

struct SimulateArgs {
  std::string input;
  std::string x0;
  double dt = 1e-3;
  std::size_t steps = 10000;
  std::string csv;
  std::string checks;
  double tol = 1e-6;
  double ratio_tol = 1e-8;
  double lax_tol = 1e-5;
};

int run_simulate(const SimulateArgs& a, std::uint64_t seed, const Output& out) {
  const auto file = lvgraph::io::read_graph_file(a.input);
  const lvgraph::LVSystem sys(file.graph);
  std::vector<double> x0;
  if (a.x0.empty()) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    for (std::size_t i = 0; i < sys.dimension(); ++i) x0.push_back(dist(rng));
  } else {
    x0 = parse_doubles(a.x0, "--x0");
  }
  if (x0.size() != sys.dimension())
    throw Error(ErrorKind::DimensionMismatch, "--x0 has " + std::to_string(x0.size()) + " entries, graph has " +
                                                  std::to_string(sys.dimension()) + " vertices");

  const auto traj = lvgraph::integrate(sys, x0, a.dt, a.steps);
  if (!a.csv.empty()) {
    std::ofstream csv(a.csv);
    if (!csv) throw Error(ErrorKind::BadParameter, "cannot write " + a.csv);
    lvgraph::write_csv(traj, csv);
  }

  Json report;
  report["dimension"] = sys.dimension();
  report["steps"] = traj.states.size() - 1;
  report["dt"] = a.dt;
  report["blew_up"] = traj.blew_up;
  report["final"] = traj.states.back();
  bool pass = !traj.blew_up;
  Json checks = Json::object();
  for (const auto& c : split(a.checks)) {
    lvgraph::DriftReport r;
    double tol = a.tol;
    if (c == "h") {
      r = lvgraph::drift(traj, {lvgraph::hamiltonian_observable(sys)});
    } else if (c == "casimirs") {
      r = lvgraph::drift(traj, lvgraph::casimir_observables(sys));
    } else if (c == "ratios") {
      tol = a.ratio_tol;
      r = lvgraph::drift(traj, lvgraph::ratio_observables(file.graph));
    } else if (c == "lax") {
      tol = a.lax_tol;
      const auto d = lvgraph::declone(file.graph);
      const auto nk = match_bogo(d.quotient);
      if (!nk) throw Error(ErrorKind::PreconditionFailed, "lax check needs a (cloned) B(n,k) graph in family order");
      const auto [n, k] = *nk;
      const lvgraph::LinearMap chi = lvgraph::decloning_lvmap(file.graph);
      const std::vector<double> lambdas{-2, -1, 1, 2, 3};
      const auto base = lvgraph::char_poly_observables(
          [n, k](std::span<const double> y) { return lvgraph::bogo_lax(n, k, y).L; }, lambdas, chi.apply(x0));
      r = lvgraph::drift(traj, lvgraph::pullback(base, chi));
    } else {
      throw Error(ErrorKind::BadParameter, "unknown check '" + c + "' (h, casimirs, ratios, lax)");
    }
    Json j = drift_json(r, tol);
    pass = pass && j["pass"].get<bool>();
    checks[c] = std::move(j);
  }
  report["checks"] = std::move(checks);
  report["pass"] = pass;
  out.write(report);
  return pass ? kPass : kCheckFailed;
}

struct LaxArgs {
  std::vector<std::string> family;
  std::string weights;
  std::size_t points = 100;
  std::string mode = "base";
  double tol = 1e-10;
  unsigned jobs = 1;
  std::string lambdas = "-2,-1,1,2,3";
};

int run_lax_verify(const LaxArgs& a, std::uint64_t seed, const Output& out) {
  if (a.family.empty()) throw Error(ErrorKind::BadParameter, "--family is required");
  std::vector<int> params;
  for (std::size_t i = 1; i < a.family.size(); ++i) {
    try {
      params.push_back(std::stoi(a.family[i]));
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadParameter, "--family: not an integer: '" + a.family[i] + "'");
    }
  }
  int n = 0, k = 0;
  if (a.family[0] == "bogo" && params.size() == 2) {
    n = params[0];
    k = params[1];
  } else if (a.family[0] == "km" && params.size() == 1) {
    n = params[0];
    k = 1;
  } else {
    throw Error(ErrorKind::BadParameter, "--family expects 'bogo n k' or 'km n'");
  }
  std::vector<std::int64_t> weights(static_cast<std::size_t>(std::max(n, 0)), 1);
  if (!a.weights.empty()) weights = parse_ints(a.weights, "--weights");

  lvgraph::LaxMode mode;
  if (a.mode == "base") {
    mode = lvgraph::LaxMode::Base;
  } else if (a.mode == "pullback") {
    mode = lvgraph::LaxMode::Pullback;
  } else if (a.mode == "block") {
    mode = lvgraph::LaxMode::Block;
  } else {
    throw Error(ErrorKind::BadParameter, "--mode must be base, pullback or block");
  }

  const lvgraph::CloneLayout layout(n, k, weights);
  const auto lambdas = parse_doubles(a.lambdas, "--lambdas");
  const auto problem = lvgraph::make_lax_problem(mode, layout);
  const double residual = lvgraph::lax_sweep(problem, a.points, seed, lambdas, a.jobs);
  const bool pass = residual < a.tol;
  out.write({{"family", {{"n", n}, {"k", k}}},
             {"weights", weights},
             {"mode", a.mode},
             {"dimension", problem.dimension},
             {"points", a.points},
             {"lambdas", lambdas},
             {"seed", seed},
             {"max_residual", residual},
             {"tolerance", a.tol},
             {"pass", pass}});
  return pass ? kPass : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skew-symmetric graphs and their Lotka-Volterra systems"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  Output out;
  app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
  app.add_option("-o,--output", out.path, "Write JSON here instead of stdout");

  std::string family;
  std::vector<int> family_params;
  auto* fam = app.add_subcommand("families", "Write a standard family graph (km n, bogo n k, lv_n0 n, open_km n)");
  fam->add_option("name", family, "km, bogo, lv_n0 or open_km")->required();
  fam->add_option("params", family_params, "Family parameters")->required();
  fam->add_option("-o,--output", out.path, "Write JSON here instead of stdout");

  std::string input, input_b;
  bool weighted = false;

  auto* dec = app.add_subcommand("declone", "Quotient by identical rows; prints quotient, weights, classes");
  dec->add_option("graph", input, "Graph JSON file")->required();
  dec->add_option("-o,--output", out.path);

  auto* clo = app.add_subcommand("clone", "Clone a weighted graph (graph file with weights or declone output)");
  clo->add_option("graph", input, "Graph or declone JSON file")->required();
  clo->add_option("-o,--output", out.path);

  auto* aut = app.add_subcommand("aut", "Automorphism group order, generators and decomposition");
  aut->add_option("graph", input, "Graph JSON file")->required();
  aut->add_flag("--weighted", weighted, "Preserve the file's vertex weights");
  aut->add_option("-o,--output", out.path);

  auto* iso = app.add_subcommand("iso", "Decide isomorphism of two graphs");
  iso->add_option("a", input, "First graph JSON file")->required();
  iso->add_option("b", input_b, "Second graph JSON file")->required();
  iso->add_flag("--weighted", weighted, "Preserve the files' vertex weights");
  iso->add_option("-o,--output", out.path);

  auto* cas = app.add_subcommand("casimirs", "Rank of A and a Casimir monomial basis");
  cas->add_option("graph", input, "Graph JSON file")->required();
  cas->add_option("-o,--output", out.path);

  SimulateArgs sim;
  auto* simc = app.add_subcommand("simulate", "Integrate the LV flow with RK4 and report drift");
  simc->add_option("graph", sim.input, "Graph JSON file")->required();
  simc->add_option("--x0", sim.x0, "Initial point, comma separated (default: uniform [0.5,1.5] from --seed)");
  simc->add_option("--dt", sim.dt, "Step size")->capture_default_str()->check(CLI::PositiveNumber);
  simc->add_option("--steps", sim.steps, "Number of steps")->capture_default_str();
  simc->add_option("--csv", sim.csv, "Write the trajectory as CSV");
  simc->add_option("--check", sim.checks, "Comma list of h, casimirs, ratios, lax");
  simc->add_option("--tol", sim.tol, "Relative drift tolerance for h and casimirs")->capture_default_str();
  simc->add_option("--ratio-tol", sim.ratio_tol, "Relative drift tolerance for clone ratios")->capture_default_str();
  simc->add_option("--lax-tol", sim.lax_tol, "Relative drift tolerance for char-poly integrals")
      ->capture_default_str();
  simc->add_option("--seed", seed, "Seed for the default initial point");
  simc->add_option("-o,--output", out.path);

  LaxArgs lax;
  auto* laxc = app.add_subcommand("lax-verify", "Certify L' = [L, M] at random points");
  laxc->add_option("--family", lax.family, "bogo n k, or km n")->expected(2, 3)->required();
  laxc->add_option("--weights", lax.weights, "Clone weights, comma separated (pullback and block modes)");
  laxc->add_option("--points", lax.points, "Number of random points in [0.1,1]")->capture_default_str();
  laxc->add_option("--mode", lax.mode, "base, pullback or block")->capture_default_str();
  laxc->add_option("--tol", lax.tol, "Residual tolerance")->capture_default_str();
  laxc->add_option("--jobs", lax.jobs, "Worker threads")->capture_default_str();
  laxc->add_option("--lambdas", lax.lambdas, "Spectral parameter samples")->capture_default_str();
  laxc->add_option("--seed", seed, "Seed for the sample points");
  laxc->add_option("-o,--output", out.path);

  std::string map_path;
  auto* chk = app.add_subcommand("check-map", "Check a linear map between two LV systems");
  chk->add_option("domain", input, "Domain graph JSON file")->required();
  chk->add_option("codomain", input_b, "Codomain graph JSON file")->required();
  chk->add_option("map", map_path, "Map JSON file {\"rows\": [...]}")->required();
  chk->add_option("-o,--output", out.path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*fam) {
      out.write(lvgraph::io::graph_to_json(family_graph(family, family_params)));
    } else if (*dec) {
      const auto file = lvgraph::io::read_graph_file(input);
      out.write(lvgraph::io::declone_to_json(lvgraph::declone(file.graph)));
    } else if (*clo) {
      const auto file = lvgraph::io::weighted_graph_from_json(lvgraph::io::read_json_file(input), input);
      out.write(lvgraph::io::graph_to_json(lvgraph::clone_graph(file.graph, file.weights)));
    } else if (*aut) {
      const auto file = lvgraph::io::read_graph_file(input);
      std::optional<lvgraph::WeightVector> w;
      if (weighted) w = file.weights;
      const auto dec_aut = lvgraph::decompose_automorphisms(file.graph, w);
      Json gens = Json::array();
      for (const auto& p : lvgraph::automorphism_generators(file.graph, w))
        gens.push_back(permutation_json(file.graph, p));
      out.write({{"order", dec_aut.order},
                 {"generators", std::move(gens)},
                 {"decomposition", {{"blocks", dec_aut.blocks}, {"quotient_order", dec_aut.quotient_order}}}});
    } else if (*iso) {
      const auto a = lvgraph::io::read_graph_file(input);
      const auto b = lvgraph::io::read_graph_file(input_b);
      std::optional<std::pair<lvgraph::WeightVector, lvgraph::WeightVector>> w;
      if (weighted) w.emplace(a.weights, b.weights);
      const auto m = lvgraph::are_isomorphic(a.graph, b.graph, w);
      Json j{{"isomorphic", m.has_value()}};
      if (m) j["map"] = map_json(*m);
      out.write(j);
    } else if (*cas) {
      const auto file = lvgraph::io::read_graph_file(input);
      const lvgraph::LVSystem sys(file.graph);
      Json basis = Json::array();
      for (const auto& c : lvgraph::casimir_basis(sys)) basis.push_back(c.exponents);
      out.write({{"rank", lvgraph::rank(sys)}, {"basis", std::move(basis)}});
    } else if (*simc) {
      return run_simulate(sim, seed, out);
    } else if (*laxc) {
      return run_lax_verify(lax, seed, out);
    } else if (*chk) {
      const lvgraph::LVSystem dom(lvgraph::io::read_graph_file(input).graph);
      const lvgraph::LVSystem cod(lvgraph::io::read_graph_file(input_b).graph);
      const auto phi = lvgraph::io::linear_map_from_json(lvgraph::io::read_json_file(map_path), dom, cod, map_path);
      const bool poisson = lvgraph::is_poisson_map(phi);
      const bool ham = lvgraph::preserves_hamiltonian(phi);
      out.write({{"poisson", poisson}, {"hamiltonian", ham}, {"lv_morphism", poisson && ham}});
      return poisson && ham ? kPass : kCheckFailed;
    }
  } catch (const Error& e) {
    std::cerr << "lvgraph: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "lvgraph: " << e.what() << "\n";
    return kUsage;
  }
  return kPass;
}
