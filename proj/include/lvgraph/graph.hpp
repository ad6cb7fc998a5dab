#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lvgraph/exact_matrix.hpp"
#include "lvgraph/rational.hpp"

namespace lvgraph {

struct Arc {
  std::string from;
  std::string to;
  Rational value;
};

/// Finite vertex set with a skew-symmetric rational adjacency a_{s,t}.
///
/// The adjacency is kept dense; a_{t,s} = -a_{s,t} and a_{s,s} = 0 hold by
/// construction. Vertex order is significant: it fixes the coordinate order of
/// the associated LV system.
class SkewGraph {
 public:
  SkewGraph() = default;

  /// Validating constructor. Arcs may be given in either orientation; a pair
  /// listed twice must agree up to the skew sign.
  static SkewGraph create(std::vector<std::string> vertices, const std::vector<Arc>& arcs);

  /// Builds from a dense matrix; throws SkewConflict/SelfLoop if the matrix is
  /// not skew-symmetric.
  static SkewGraph from_matrix(std::vector<std::string> vertices, const RationalMatrix& adjacency);

  std::size_t order() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::string& label(std::size_t i) const { return vertices_.at(i); }
  std::optional<std::size_t> find(std::string_view label) const;
  /// Throws Error(UnknownLabel).
  std::size_t index_of(std::string_view label) const;

  const Rational& arc(std::size_t s, std::size_t t) const { return adjacency_(s, t); }
  const Rational& arc(std::string_view s, std::string_view t) const {
    return adjacency_(index_of(s), index_of(t));
  }
  const RationalMatrix& adjacency() const noexcept { return adjacency_; }
  std::vector<Rational> row(std::size_t s) const { return adjacency_.row(s); }

  /// Nonzero arcs, each pair once, oriented so the value is positive.
  std::vector<Arc> arcs() const;

  friend bool operator==(const SkewGraph& a, const SkewGraph& b) {
    return a.vertices_ == b.vertices_ && a.adjacency_ == b.adjacency_;
  }

 private:
  SkewGraph(std::vector<std::string> vertices, RationalMatrix adjacency);

  std::vector<std::string> vertices_;
  std::unordered_map<std::string, std::size_t> index_;
  RationalMatrix adjacency_;
};

inline SkewGraph new_graph(std::vector<std::string> vertices, const std::vector<Arc>& arcs) {
  return SkewGraph::create(std::move(vertices), arcs);
}

/// Positive integer weight per vertex label.
class WeightVector {
 public:
  WeightVector() = default;
  /// Throws Error(BadParameter) on a weight < 1.
  explicit WeightVector(std::map<std::string, std::int64_t> weights);

  static WeightVector ones(const SkewGraph& g);
  /// Weights given in the graph's vertex order.
  static WeightVector from_aligned(const SkewGraph& g, std::span<const std::int64_t> weights);

  /// Throws Error(UnknownLabel) for a label without a weight.
  std::int64_t at(std::string_view label) const;
  std::int64_t total() const noexcept;
  std::size_t size() const noexcept { return weights_.size(); }

  /// True iff the weight domain is exactly g's vertex set.
  bool matches(const SkewGraph& g) const;
  /// Weights in g's vertex order; throws Error(WeightDomainMismatch).
  std::vector<std::int64_t> aligned(const SkewGraph& g) const;

  const std::map<std::string, std::int64_t>& entries() const noexcept { return weights_; }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::map<std::string, std::int64_t> weights_;
};

/// Total vertex map between two graphs; a candidate graph morphism.
class GraphMap {
 public:
  GraphMap(SkewGraph domain, SkewGraph codomain, std::vector<std::size_t> images);

  static GraphMap from_labels(SkewGraph domain, SkewGraph codomain,
                              const std::map<std::string, std::string>& images);
  static GraphMap identity(const SkewGraph& g);

  const SkewGraph& domain() const noexcept { return domain_; }
  const SkewGraph& codomain() const noexcept { return codomain_; }
  const std::vector<std::size_t>& images() const noexcept { return images_; }

  std::size_t operator()(std::size_t s) const { return images_.at(s); }
  const std::string& operator()(std::string_view s) const {
    return codomain_.label(images_.at(domain_.index_of(s)));
  }

  bool is_surjective() const;
  bool is_bijective() const;

  std::map<std::string, std::string> as_labels() const;

  friend bool operator==(const GraphMap&, const GraphMap&) = default;

 private:
  SkewGraph domain_;
  SkewGraph codomain_;
  std::vector<std::size_t> images_;
};

/// second ∘ first. Throws Error(PreconditionFailed) if the graphs do not chain.
GraphMap compose(const GraphMap& second, const GraphMap& first);

struct DecloneResult {
  SkewGraph quotient;
  WeightVector weights;
  GraphMap projection;
  /// Equivalence classes in order of their first member; members in input order.
  std::vector<std::vector<std::string>> classes;
  /// class_of[s] = index of the class (= quotient vertex) containing vertex s.
  std::vector<std::size_t> class_of;
};

/// Images of 0..n-1; perm[s] is the image of vertex s.
using Permutation = std::vector<std::size_t>;

/// A finite group of vertex permutations stored by enumeration.
class PermutationGroup {
 public:
  /// Verifies identity, inverses and closure; throws Error(PreconditionFailed).
  PermutationGroup(std::size_t degree, std::vector<Permutation> elements);

  std::size_t degree() const noexcept { return degree_; }
  std::uint64_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  bool contains(const Permutation& p) const;

 private:
  std::size_t degree_;
  std::vector<Permutation> elements_;  // sorted
};

Permutation compose(const Permutation& second, const Permutation& first);
Permutation invert(const Permutation& p);

struct SearchOptions {
  /// Largest vertex count on which a permutation search may run.
  std::size_t max_order = 9;
};

bool is_graph_morphism(const GraphMap& m);
/// Throws Error(WeightDomainMismatch) if the weights do not match the graphs.
bool is_weighted_morphism(const GraphMap& m, const WeightVector& w, const WeightVector& w_target);

std::string clone_label(std::string_view vertex, std::int64_t i);
SkewGraph clone_graph(const SkewGraph& g, const WeightVector& w);

DecloneResult declone(const SkewGraph& g);
bool is_irreducible(const SkewGraph& g);

/// The unique morphism between quotients induced by a surjective morphism.
/// Throws Error(NotMorphism) or Error(NotSurjective).
GraphMap declone_morphism(const GraphMap& m);

SkewGraph induced_subgraph(const SkewGraph& g, std::span<const std::size_t> keep);

/// Moves the arc structure along perm while keeping the vertex labels in
/// place: a'_{perm(s),perm(t)} = a_{s,t}. The map s -> perm(s) is then an
/// isomorphism g -> result.
SkewGraph permute_vertices(const SkewGraph& g, const Permutation& perm);

/// All (weight-preserving, if w is given) automorphisms by backtracking.
/// Throws Error(TooLarge) above opts.max_order.
PermutationGroup automorphisms_brute(const SkewGraph& g, const std::optional<WeightVector>& w = std::nullopt,
                                     SearchOptions opts = {});

struct AutDecomposition {
  std::vector<std::int64_t> blocks;   // class sizes in quotient vertex order
  std::uint64_t quotient_order = 0;   // |Aut(quotient, colors)|
  std::uint64_t order = 0;            // |Aut(g)| or |Aut(g, w)|
};

/// |Aut| through the decloned quotient: product of symmetric factors on the
/// classes times the colored quotient automorphism count. Only the quotient is
/// searched, so opts.max_order applies to it.
AutDecomposition decompose_automorphisms(const SkewGraph& g, const std::optional<WeightVector>& w = std::nullopt,
                                         SearchOptions opts = {});

std::uint64_t aut_order_decomposed(const SkewGraph& g, SearchOptions opts = {});

/// Generators of Aut(g) (or Aut(g, w)): transpositions of interchangeable
/// clones plus lifts of quotient automorphism generators.
std::vector<Permutation> automorphism_generators(const SkewGraph& g,
                                                 const std::optional<WeightVector>& w = std::nullopt,
                                                 SearchOptions opts = {});

/// An isomorphism g -> h (weight-preserving if weights are given), searched on
/// the decloned quotients and lifted class by class.
std::optional<GraphMap> are_isomorphic(const SkewGraph& g, const SkewGraph& h,
                                       const std::optional<std::pair<WeightVector, WeightVector>>& weights = std::nullopt,
                                       SearchOptions opts = {});

}  // namespace lvgraph
