#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "lvgraph/error.hpp"
#include "lvgraph/families.hpp"
#include "lvgraph/graph.hpp"
#include "oracles.hpp"

using namespace lvgraph;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an lvgraph::Error");
  return ErrorKind::Parse;
}

SkewGraph circuit() {
  return new_graph({"s", "t", "u", "v"}, {{"s", "t", 1}, {"t", "u", 1}, {"u", "v", 1}, {"v", "s", 1}});
}

WeightVector circuit_weights() { return WeightVector({{"s", 2}, {"t", 1}, {"u", 2}, {"v", 1}}); }

SkewGraph cloned_circuit() { return clone_graph(circuit(), circuit_weights()); }

// s1 -> t <- s2
SkewGraph two_sources() { return new_graph({"s1", "s2", "t"}, {{"s1", "t", 1}, {"s2", "t", 1}}); }

Permutation random_permutation(std::mt19937_64& rng, std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("new_graph validation") {
  const SkewGraph km6 = new_graph({"1", "2", "3", "4", "5", "6"},
                                  {{"1", "2", 1}, {"2", "3", 1}, {"3", "4", 1}, {"4", "5", 1}, {"5", "6", 1}, {"6", "1", 1}});
  CHECK(km6 == families::km(6));
  CHECK(km6.arc("2", "1") == Rational(-1));

  const SkewGraph single = new_graph({"s"}, {});
  CHECK(single.order() == 1);
  CHECK(single.arc(0, 0).is_zero());

  CHECK(kind_of([] { new_graph({"s", "t"}, {{"s", "t", 1}, {"t", "s", 1}}); }) == ErrorKind::SkewConflict);
  CHECK_NOTHROW(new_graph({"s", "t"}, {{"s", "t", 1}, {"t", "s", -1}}));
  CHECK(kind_of([] { new_graph({"s", "s"}, {}); }) == ErrorKind::DuplicateVertex);
  CHECK(kind_of([] { new_graph({"s"}, {{"s", "s", 1}}); }) == ErrorKind::SelfLoop);
  CHECK(kind_of([] { new_graph({"s"}, {{"s", "x", 1}}); }) == ErrorKind::UnknownLabel);
}

TEST_CASE("weight vectors") {
  CHECK(kind_of([] { WeightVector({{"s", 0}}); }) == ErrorKind::BadParameter);
  CHECK(circuit_weights().total() == 6);
  CHECK(kind_of([] { circuit_weights().aligned(families::km(4)); }) == ErrorKind::WeightDomainMismatch);
}

TEST_CASE("graph morphisms") {
  const SkewGraph km6 = families::km(6);
  CHECK(is_graph_morphism(GraphMap::identity(km6)));

  const SkewGraph arrow = new_graph({"s", "t"}, {{"s", "t", 1}});
  CHECK(is_graph_morphism(GraphMap::from_labels(two_sources(), arrow, {{"s1", "s"}, {"s2", "s"}, {"t", "t"}})));

  const GraphMap constant(km6, km6, std::vector<std::size_t>(6, 0));
  CHECK_FALSE(is_graph_morphism(constant));
}

TEST_CASE("weighted morphisms") {
  const SkewGraph g = cloned_circuit();
  const DecloneResult d = declone(g);
  CHECK(is_weighted_morphism(GraphMap::identity(g), WeightVector::ones(g), WeightVector::ones(g)));
  CHECK_FALSE(is_weighted_morphism(d.projection, WeightVector::ones(g), d.weights));
  CHECK(is_weighted_morphism(d.projection, WeightVector::from_aligned(g, std::vector<std::int64_t>{2, 2, 1, 2, 2, 1}),
                             d.weights));
  CHECK(kind_of([&] { is_weighted_morphism(d.projection, d.weights, d.weights); }) ==
        ErrorKind::WeightDomainMismatch);
}

TEST_CASE("cloning") {
  const SkewGraph right = cloned_circuit();
  CHECK(right.vertices() == std::vector<std::string>{"s#1", "s#2", "t#1", "u#1", "u#2", "v#1"});
  CHECK(right.arc("s#2", "t#1") == Rational(1));
  CHECK(right.arc("v#1", "s#2") == Rational(1));
  CHECK(right.arc("s#1", "s#2").is_zero());
  CHECK(right.arc("u#1", "s#1").is_zero());

  const SkewGraph km5 = families::km(5);
  const SkewGraph same = clone_graph(km5, WeightVector::ones(km5));
  CHECK(same.vertices().front() == "1#1");
  CHECK(same.adjacency() == km5.adjacency());
  CHECK(oracle::rank(right.adjacency()) == oracle::rank(circuit().adjacency()));
  CHECK(kind_of([&] { clone_graph(km5, circuit_weights()); }) == ErrorKind::WeightDomainMismatch);
}

TEST_CASE("decloning") {
  const DecloneResult d = declone(cloned_circuit());
  CHECK(d.quotient.vertices() == std::vector<std::string>{"s#1", "t#1", "u#1", "v#1"});
  CHECK(d.quotient.adjacency() == circuit().adjacency());
  CHECK(d.weights.aligned(d.quotient) == std::vector<std::int64_t>{2, 1, 2, 1});
  CHECK(d.classes == std::vector<std::vector<std::string>>{{"s#1", "s#2"}, {"t#1"}, {"u#1", "u#2"}, {"v#1"}});
  CHECK(is_graph_morphism(d.projection));
  CHECK(d.projection.is_surjective());

  const SkewGraph km4 = families::km(4);
  const DecloneResult k = declone(km4);
  CHECK(k.quotient == km4);
  CHECK(k.weights == WeightVector::ones(km4));

  const SkewGraph one = new_graph({"s"}, {});
  CHECK(declone(one).quotient == one);

  const DecloneResult empty = declone(SkewGraph());
  CHECK(empty.quotient.order() == 0);
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(families::km(6)));
  CHECK_FALSE(is_irreducible(cloned_circuit()));
  CHECK(is_irreducible(new_graph({"s"}, {})));
}

TEST_CASE("declone_morphism") {
  const SkewGraph g = cloned_circuit();
  const DecloneResult d = declone(g);
  CHECK(declone_morphism(d.projection) == GraphMap::identity(d.quotient));

  // Swap s#1 and s#2.
  const GraphMap swap(g, g, {1, 0, 2, 3, 4, 5});
  REQUIRE(is_graph_morphism(swap));
  CHECK(declone_morphism(swap) == GraphMap::identity(d.quotient));

  // s1, s2, t embedded into KM(4)-like 4-vertex graph: not surjective.
  const SkewGraph target = new_graph({"x", "y", "u", "w"}, {{"x", "y", 1}, {"u", "y", 1}, {"w", "x", 1}});
  const GraphMap embed = GraphMap::from_labels(two_sources(), target, {{"s1", "x"}, {"s2", "u"}, {"t", "y"}});
  REQUIRE(is_graph_morphism(embed));
  CHECK(kind_of([&] { declone_morphism(embed); }) == ErrorKind::NotSurjective);

  const SkewGraph km6 = families::km(6);
  CHECK(kind_of([&] { declone_morphism(GraphMap(km6, km6, {1, 0, 2, 3, 4, 5})); }) == ErrorKind::NotMorphism);
}

TEST_CASE("automorphisms by brute force") {
  CHECK(automorphisms_brute(families::km(6)).order() == 6);
  CHECK(automorphisms_brute(families::lv_n0(5)).order() == 1);
  CHECK(automorphisms_brute(two_sources()).order() == 2);
  CHECK(automorphisms_brute(cloned_circuit()).order() == 8);
  CHECK(automorphisms_brute(circuit(), circuit_weights()).order() == 2);
  CHECK(kind_of([] { automorphisms_brute(families::km(10)); }) == ErrorKind::TooLarge);
}

TEST_CASE("automorphism decomposition") {
  const auto d = decompose_automorphisms(cloned_circuit());
  CHECK(d.blocks == std::vector<std::int64_t>{2, 1, 2, 1});
  CHECK(d.quotient_order == 2);
  CHECK(d.order == 8);
  CHECK(aut_order_decomposed(families::km(6)) == 6);
  CHECK(oracle::aut_order(cloned_circuit()) == 8);

  // Larger than the brute-force limit, but the quotient is small.
  const SkewGraph big = clone_graph(families::km(4), WeightVector::from_aligned(families::km(4), std::vector<std::int64_t>{3, 3, 3, 3}));
  CHECK(aut_order_decomposed(big) == 6 * 6 * 6 * 6 * 4);
}

TEST_CASE("generators generate the group") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const SkewGraph g = oracle::random_reducible_graph(rng, 3 + rng() % 2, 2);
    if (g.order() > 7) continue;
    const auto gens = automorphism_generators(g);
    // Closure of the generators by breadth-first multiplication.
    std::vector<Permutation> seen;
    Permutation id(g.order());
    std::iota(id.begin(), id.end(), 0);
    seen.push_back(id);
    for (std::size_t i = 0; i < seen.size(); ++i)
      for (const auto& s : gens) {
        Permutation p = compose(s, seen[i]);
        if (std::find(seen.begin(), seen.end(), p) == seen.end()) seen.push_back(p);
      }
    const auto group = automorphisms_brute(g);
    CHECK(seen.size() == group.order());
    for (const auto& p : seen) CHECK(group.contains(p));
  }
}

TEST_CASE("isomorphism") {
  const SkewGraph km6 = families::km(6);
  // Reversed vertex order keeps the labels on the arcs but flips the listing.
  const SkewGraph reversed = permute_vertices(km6, {5, 4, 3, 2, 1, 0});
  CHECK(oracle::isomorphic(km6, reversed));
  const auto m = are_isomorphic(km6, reversed);
  REQUIRE(m.has_value());
  CHECK(is_graph_morphism(*m));
  CHECK(m->is_bijective());

  const auto self = are_isomorphic(km6, km6);
  REQUIRE(self.has_value());
  CHECK(is_graph_morphism(*self));

  CHECK_FALSE(are_isomorphic(km6, families::bogo(6, 2)).has_value());
}

TEST_CASE("isomorphism of clones with rotated weights") {
  // Weights (1,2,1,2) on the same 4-circuit: rotating the circuit by one
  // step carries them onto (2,1,2,1), so the cloned graphs are isomorphic.
  const SkewGraph left = circuit();
  const WeightVector rotated({{"s", 1}, {"t", 2}, {"u", 1}, {"v", 2}});
  const SkewGraph other = clone_graph(left, rotated);
  CHECK(oracle::isomorphic(cloned_circuit(), other));
  const auto m = are_isomorphic(cloned_circuit(), other);
  REQUIRE(m.has_value());
  CHECK(is_graph_morphism(*m));
  CHECK(m->is_bijective());

  // As weighted quotients they are isomorphic too, via the same rotation.
  const auto w = are_isomorphic(left, left, std::make_pair(circuit_weights(), rotated));
  REQUIRE(w.has_value());
  CHECK(is_weighted_morphism(*w, circuit_weights(), rotated));
  CHECK(oracle::isomorphic(left, left, {2, 1, 2, 1}, {1, 2, 1, 2}));

  // A weighting with a different multiset is not.
  const WeightVector lopsided({{"s", 2}, {"t", 2}, {"u", 1}, {"v", 1}});
  CHECK_FALSE(are_isomorphic(left, left, std::make_pair(circuit_weights(), lopsided)).has_value());
  CHECK_FALSE(oracle::isomorphic(left, left, {2, 1, 2, 1}, {2, 2, 1, 1}));
}

TEST_CASE("property: declone is idempotent and irreducible") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const SkewGraph g = trial % 2 ? oracle::random_graph(rng, rng() % 8) : oracle::random_reducible_graph(rng, 1 + rng() % 4, 3);
    const DecloneResult d = declone(g);
    CHECK(is_irreducible(d.quotient));
    const DecloneResult dd = declone(d.quotient);
    CHECK(dd.quotient == d.quotient);
    for (const auto& c : dd.classes) CHECK(c.size() == 1);
    CHECK(is_graph_morphism(d.projection));
    CHECK(declone_morphism(d.projection) == GraphMap::identity(d.quotient));

    // Classes agree with pairwise row comparison.
    const auto classes = oracle::row_classes(g);
    REQUIRE(classes.size() == d.classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
      REQUIRE(classes[i].size() == d.classes[i].size());
      for (std::size_t j = 0; j < classes[i].size(); ++j) CHECK(g.label(classes[i][j]) == d.classes[i][j]);
    }
  }
}

TEST_CASE("property: clone then declone round trip") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const SkewGraph g = declone(oracle::random_graph(rng, 1 + rng() % 5)).quotient;
    std::vector<std::int64_t> w(g.order());
    for (auto& x : w) x = 1 + static_cast<std::int64_t>(rng() % 3);
    const WeightVector wv = WeightVector::from_aligned(g, w);
    const DecloneResult d = declone(clone_graph(g, wv));
    const auto iso = are_isomorphic(d.quotient, g, std::make_pair(d.weights, wv));
    REQUIRE(iso.has_value());
    CHECK(is_weighted_morphism(*iso, d.weights, wv));
  }
}

TEST_CASE("property: automorphism counts agree with brute force") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 120; ++trial) {
    const SkewGraph g =
        trial % 2 ? oracle::random_graph(rng, 1 + rng() % 7) : oracle::random_reducible_graph(rng, 1 + rng() % 4, 2);
    if (g.order() > 7) continue;
    const std::uint64_t expected = oracle::aut_order(g);
    CHECK(automorphisms_brute(g).order() == expected);
    CHECK(aut_order_decomposed(g) == expected);
  }
}

TEST_CASE("property: isomorphism to a permuted copy") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 150; ++trial) {
    const SkewGraph g =
        trial % 2 ? oracle::random_graph(rng, 1 + rng() % 7) : oracle::random_reducible_graph(rng, 1 + rng() % 4, 3);
    const SkewGraph h = permute_vertices(g, random_permutation(rng, g.order()));
    const auto m = are_isomorphic(g, h);
    REQUIRE(m.has_value());
    CHECK(is_graph_morphism(*m));
    CHECK(m->is_bijective());
    const auto dg = declone(g), dh = declone(h);
    auto wg = dg.weights.aligned(dg.quotient), wh = dh.weights.aligned(dh.quotient);
    std::sort(wg.begin(), wg.end());
    std::sort(wh.begin(), wh.end());
    CHECK(wg == wh);
  }
}

TEST_CASE("property: isomorphism decisions agree with brute force") {
  std::mt19937_64 rng(31);
  int positives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const SkewGraph g = oracle::random_graph(rng, n);
    const SkewGraph h = trial % 3 ? oracle::random_graph(rng, n) : permute_vertices(g, random_permutation(rng, n));
    const bool expected = oracle::isomorphic(g, h);
    positives += expected;
    const auto m = are_isomorphic(g, h);
    CHECK(m.has_value() == expected);
    if (m) CHECK(is_graph_morphism(*m));
  }
  CHECK(positives > 50);
}

TEST_CASE("induced subgraphs") {
  const SkewGraph km4 = families::km(4);
  const std::vector<std::size_t> keep{0, 1, 2};
  CHECK(induced_subgraph(km4, keep) == families::open_km(3));
}
