#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lvgraph/exact_matrix.hpp"
#include "lvgraph/graph.hpp"

namespace lvgraph {

/// The Lotka-Volterra system of a skew-symmetric graph: coordinates x_s, one
/// per vertex, bracket {x_s, x_t} = a_{s,t} x_s x_t, Hamiltonian H = sum x_s.
class LVSystem {
 public:
  LVSystem() = default;
  explicit LVSystem(SkewGraph graph);

  const SkewGraph& graph() const noexcept { return graph_; }
  std::size_t dimension() const noexcept { return graph_.order(); }

  /// Adjacency converted to double, row-major. Only numeric evaluation uses it.
  std::span<const double> dense_adjacency() const noexcept { return dense_; }

  double hamiltonian(std::span<const double> x) const;

  friend bool operator==(const LVSystem& a, const LVSystem& b) { return a.graph_ == b.graph_; }

 private:
  SkewGraph graph_;
  std::vector<double> dense_;
};

inline LVSystem lv_of_graph(const SkewGraph& g) { return LVSystem(g); }

/// xdot_s = x_s * sum_t a_{s,t} x_t. Throws Error(DimensionMismatch).
std::vector<double> vector_field(const LVSystem& sys, std::span<const double> x);
void vector_field(const LVSystem& sys, std::span<const double> x, std::span<double> out);

/// Exact rank of the adjacency matrix over Q (= rank of the Poisson structure).
std::size_t rank(const LVSystem& sys);

/// x^alpha with A alpha = 0.
struct CasimirMonomial {
  std::vector<std::int64_t> exponents;

  double evaluate(std::span<const double> x) const;
  friend bool operator==(const CasimirMonomial&, const CasimirMonomial&) = default;
};

/// Basis of the rational nullspace of A as primitive integer vectors with a
/// positive leading entry; size = dimension - rank.
std::vector<CasimirMonomial> casimir_basis(const LVSystem& sys);

/// Linear map between LV phase spaces. Row u, column s holds beta_{u,s} with
/// phi^* y_u = sum_s beta_{u,s} x_s.
class LinearMap {
 public:
  /// Throws Error(DimensionMismatch) unless matrix is codomain-dim x domain-dim.
  LinearMap(LVSystem domain, LVSystem codomain, RationalMatrix matrix);

  const LVSystem& domain() const noexcept { return domain_; }
  const LVSystem& codomain() const noexcept { return codomain_; }
  const RationalMatrix& matrix() const noexcept { return matrix_; }

  std::vector<double> apply(std::span<const double> x) const;

  friend bool operator==(const LinearMap&, const LinearMap&) = default;

 private:
  LVSystem domain_;
  LVSystem codomain_;
  RationalMatrix matrix_;
};

/// second ∘ first as a product of matrices.
LinearMap compose(const LinearMap& second, const LinearMap& first);
/// Throws Error(PreconditionFailed) when the matrix is singular.
LinearMap inverse(const LinearMap& phi);

/// The exact coefficient condition
///   (a'_{u,v} - a_{s,t}) b_{u,s} b_{v,t} + (a'_{u,v} + a_{s,t}) b_{u,t} b_{v,s} = 0
/// for all s, t, u, v.
bool is_poisson_map(const LinearMap& phi);
/// Every column of B sums to 1, i.e. phi^* H' = H.
bool preserves_hamiltonian(const LinearMap& phi);
bool is_lv_morphism(const LinearMap& phi);

/// LV(Phi): beta_{u,s} = 1 iff Phi(s) = u. Throws Error(NotMorphism).
LinearMap lv_of_morphism(const GraphMap& m);

/// LV of the decloning projection: sums the coordinates of each class.
LinearMap decloning_lvmap(const SkewGraph& g);

struct NormalFormPartition {
  /// (codomain vertex u, S_u) in codomain vertex order; members in domain order.
  std::vector<std::pair<std::string, std::vector<std::string>>> parts;

  friend bool operator==(const NormalFormPartition&, const NormalFormPartition&) = default;
};

/// Partition S_u = {s : beta_{u,s} != 0} of a surjective LV morphism onto an
/// irreducible system, after asserting the normal form (entries 1, one per
/// column, a_{s,t} = a'_{u,v} across parts). Throws Error(PreconditionFailed).
NormalFormPartition normal_form(const LinearMap& phi);

/// The LV morphism between decloned systems making the decloning square
/// commute. Throws Error(PreconditionFailed) unless phi is a surjective LV
/// morphism.
LinearMap declone_lv_morphism(const LinearMap& phi);

/// Random LV automorphism acting by an invertible column-sum-1 block on each
/// decloning class and by the identity across classes.
LinearMap glplus_sample(const SkewGraph& g, std::mt19937_64& rng);
LinearMap glplus_sample(const SkewGraph& g, std::uint64_t seed);

struct AutDescription {
  std::uint64_t quotient_aut_order = 0;
  std::vector<std::int64_t> glplus_block_sizes;
};

/// Aut(LV(g)) described by its GL+ block sizes and the finite factor
/// |Aut(quotient, weights)|. Throws Error(TooLarge) when the quotient is
/// beyond opts.max_order.
AutDescription aut_description(const SkewGraph& g, SearchOptions opts = {});

}  // namespace lvgraph
