#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "lvgraph/error.hpp"
#include "lvgraph/graph.hpp"

namespace lvgraph {
namespace {

// Vertex invariant used for candidate pruning: color plus the sorted row.
struct Invariant {
  std::int64_t color;
  std::vector<Rational> sorted_row;
  auto operator<=>(const Invariant&) const = default;
};

std::vector<Invariant> invariants(const SkewGraph& g, std::span<const std::int64_t> colors) {
  std::vector<Invariant> out;
  out.reserve(g.order());
  for (std::size_t s = 0; s < g.order(); ++s) {
    auto row = g.row(s);
    std::sort(row.begin(), row.end());
    out.push_back({colors[s], std::move(row)});
  }
  return out;
}

// Enumerates color-preserving isomorphisms a -> b with b(f s, f t) = a(s, t).
// The visitor returns false to stop the search.
class IsoSearch {
 public:
  IsoSearch(const SkewGraph& a, std::span<const std::int64_t> colors_a, const SkewGraph& b,
            std::span<const std::int64_t> colors_b)
      : a_(a), b_(b) {
    const std::size_t n = a.order();
    if (b.order() != n) {
      feasible_ = false;
      return;
    }
    auto inv_a = invariants(a, colors_a);
    auto inv_b = invariants(b, colors_b);
    auto sa = inv_a, sb = inv_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) {
      feasible_ = false;
      return;
    }
    candidates_.resize(n);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        if (inv_a[s] == inv_b[t]) candidates_[s].push_back(t);

    // Assign constrained vertices first: few candidates, many arcs into the
    // already placed set.
    std::vector<bool> placed(n, false);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t best = n;
      std::pair<std::size_t, std::size_t> best_key{0, 0};
      for (std::size_t s = 0; s < n; ++s) {
        if (placed[s]) continue;
        std::size_t links = 0;
        for (std::size_t p : order_) links += a.arc(s, p).is_zero() ? 0 : 1;
        std::pair<std::size_t, std::size_t> key{links, n + 1 - candidates_[s].size()};
        if (best == n || key > best_key) {
          best = s;
          best_key = key;
        }
      }
      placed[best] = true;
      order_.push_back(best);
    }
  }

  void run(const std::function<bool(const Permutation&)>& visit) {
    if (!feasible_) return;
    const std::size_t n = a_.order();
    image_.assign(n, n);
    used_.assign(n, false);
    visit_ = &visit;
    stopped_ = false;
    extend(0);
  }

 private:
  void extend(std::size_t depth) {
    const std::size_t n = a_.order();
    if (depth == n) {
      if (!(*visit_)(image_)) stopped_ = true;
      return;
    }
    std::size_t s = order_[depth];
    for (std::size_t t : candidates_[s]) {
      if (used_[t]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        std::size_t p = order_[d];
        ok = b_.arc(t, image_[p]) == a_.arc(s, p);
      }
      if (!ok) continue;
      image_[s] = t;
      used_[t] = true;
      extend(depth + 1);
      used_[t] = false;
      image_[s] = n;
      if (stopped_) return;
    }
  }

  const SkewGraph& a_;
  const SkewGraph& b_;
  bool feasible_ = true;
  std::vector<std::vector<std::size_t>> candidates_;
  std::vector<std::size_t> order_;
  Permutation image_;
  std::vector<bool> used_;
  const std::function<bool(const Permutation&)>* visit_ = nullptr;
  bool stopped_ = false;
};

void check_size(std::size_t order, const SearchOptions& opts, const char* what) {
  if (order > opts.max_order)
    throw Error(ErrorKind::TooLarge, std::string(what) + " has " + std::to_string(order) +
                                         " vertices; search limit is " + std::to_string(opts.max_order));
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "group order exceeds 64 bits");
  return out;
}

std::uint64_t factorial(std::uint64_t k) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= k; ++i) f = checked_mul(f, i);
  return f;
}

// Per-vertex weights in g's order (all ones if w is absent).
std::vector<std::int64_t> vertex_weights(const SkewGraph& g, const std::optional<WeightVector>& w) {
  if (w) return w->aligned(g);
  return std::vector<std::int64_t>(g.order(), 1);
}

// Quotient coloring: each class is colored by the sorted multiset of its
// members' weights, encoded as a shared integer code.
struct ColoredQuotient {
  DecloneResult dec;
  std::vector<std::vector<std::size_t>> members;  // per class, sorted by (weight, index)
  std::vector<std::vector<std::int64_t>> weight_sets;
};

ColoredQuotient colored_quotient(const SkewGraph& g, std::span<const std::int64_t> weights) {
  ColoredQuotient cq{declone(g), {}, {}};
  const std::size_t m = cq.dec.quotient.order();
  cq.members.resize(m);
  cq.weight_sets.resize(m);
  for (std::size_t s = 0; s < g.order(); ++s) cq.members[cq.dec.class_of[s]].push_back(s);
  for (std::size_t c = 0; c < m; ++c) {
    std::stable_sort(cq.members[c].begin(), cq.members[c].end(),
                     [&](std::size_t x, std::size_t y) { return weights[x] < weights[y]; });
    for (std::size_t s : cq.members[c]) cq.weight_sets[c].push_back(weights[s]);
  }
  return cq;
}

std::vector<std::int64_t> encode_colors(std::map<std::vector<std::int64_t>, std::int64_t>& codes,
                                        const std::vector<std::vector<std::int64_t>>& sets) {
  std::vector<std::int64_t> out;
  for (const auto& set : sets) {
    auto [it, _] = codes.emplace(set, static_cast<std::int64_t>(codes.size()));
    out.push_back(it->second);
  }
  return out;
}

// Lifts a quotient map (class c of a -> class sigma[c] of b) positionally.
Permutation lift(const ColoredQuotient& a, const ColoredQuotient& b, const Permutation& sigma, std::size_t n) {
  Permutation image(n);
  for (std::size_t c = 0; c < sigma.size(); ++c) {
    const auto& from = a.members[c];
    const auto& to = b.members[sigma[c]];
    for (std::size_t i = 0; i < from.size(); ++i) image[from[i]] = to[i];
  }
  return image;
}

std::vector<Permutation> generating_set(const PermutationGroup& group) {
  std::vector<Permutation> gens;
  std::set<Permutation> span;
  const std::size_t n = group.degree();
  Permutation id(n);
  std::iota(id.begin(), id.end(), 0);
  span.insert(id);
  for (const Permutation& p : group.elements()) {
    if (span.count(p)) continue;
    gens.push_back(p);
    // Closure of the span under right multiplication by all generators.
    std::vector<Permutation> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
      Permutation q = std::move(frontier.back());
      frontier.pop_back();
      for (const Permutation& gen : gens) {
        Permutation r = compose(q, gen);
        if (span.insert(r).second) frontier.push_back(std::move(r));
      }
    }
  }
  return gens;
}

}  // namespace

Permutation compose(const Permutation& second, const Permutation& first) {
  Permutation out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[first[i]];
  return out;
}

Permutation invert(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = i;
  return out;
}

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> elements)
    : degree_(degree), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  if (!contains(id)) throw Error(ErrorKind::PreconditionFailed, "group lacks the identity");
  for (const Permutation& p : elements_) {
    if (p.size() != degree) throw Error(ErrorKind::PreconditionFailed, "permutation of wrong degree");
    if (!contains(invert(p))) throw Error(ErrorKind::PreconditionFailed, "group not closed under inverse");
  }
  // A finite set closed under multiplication by a generating set is a group.
  for (const Permutation& gen : generating_set(*this))
    for (const Permutation& p : elements_)
      if (!contains(compose(p, gen))) throw Error(ErrorKind::PreconditionFailed, "group not closed under composition");
}

bool PermutationGroup::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

PermutationGroup automorphisms_brute(const SkewGraph& g, const std::optional<WeightVector>& w, SearchOptions opts) {
  check_size(g.order(), opts, "graph");
  auto colors = vertex_weights(g, w);
  std::vector<Permutation> found;
  IsoSearch search(g, colors, g, colors);
  search.run([&](const Permutation& p) {
    found.push_back(p);
    return true;
  });
  return PermutationGroup(g.order(), std::move(found));
}

AutDecomposition decompose_automorphisms(const SkewGraph& g, const std::optional<WeightVector>& w,
                                         SearchOptions opts) {
  auto weights = vertex_weights(g, w);
  ColoredQuotient cq = colored_quotient(g, weights);
  check_size(cq.dec.quotient.order(), opts, "quotient");

  std::map<std::vector<std::int64_t>, std::int64_t> codes;
  auto colors = encode_colors(codes, cq.weight_sets);

  AutDecomposition out;
  std::uint64_t symmetric = 1;
  for (const auto& set : cq.weight_sets) {
    out.blocks.push_back(static_cast<std::int64_t>(set.size()));
    // Members of equal weight are interchangeable.
    for (std::size_t i = 0; i < set.size();) {
      std::size_t j = i;
      while (j < set.size() && set[j] == set[i]) ++j;
      symmetric = checked_mul(symmetric, factorial(j - i));
      i = j;
    }
  }
  IsoSearch search(cq.dec.quotient, colors, cq.dec.quotient, colors);
  std::uint64_t count = 0;
  search.run([&](const Permutation&) {
    ++count;
    return true;
  });
  out.quotient_order = count;
  out.order = checked_mul(symmetric, count);
  return out;
}

std::uint64_t aut_order_decomposed(const SkewGraph& g, SearchOptions opts) {
  return decompose_automorphisms(g, std::nullopt, opts).order;
}

std::vector<Permutation> automorphism_generators(const SkewGraph& g, const std::optional<WeightVector>& w,
                                                 SearchOptions opts) {
  auto weights = vertex_weights(g, w);
  ColoredQuotient cq = colored_quotient(g, weights);
  check_size(cq.dec.quotient.order(), opts, "quotient");
  const std::size_t n = g.order();

  std::vector<Permutation> gens;
  Permutation id(n);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& members : cq.members)
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
      if (weights[members[i]] != weights[members[i + 1]]) continue;
      Permutation swap = id;
      std::swap(swap[members[i]], swap[members[i + 1]]);
      gens.push_back(std::move(swap));
    }

  std::map<std::vector<std::int64_t>, std::int64_t> codes;
  auto colors = encode_colors(codes, cq.weight_sets);
  std::vector<Permutation> quotient_auts;
  IsoSearch search(cq.dec.quotient, colors, cq.dec.quotient, colors);
  search.run([&](const Permutation& p) {
    quotient_auts.push_back(p);
    return true;
  });
  PermutationGroup quotient_group(cq.dec.quotient.order(), std::move(quotient_auts));
  for (const Permutation& sigma : generating_set(quotient_group)) gens.push_back(lift(cq, cq, sigma, n));
  return gens;
}

std::optional<GraphMap> are_isomorphic(const SkewGraph& g, const SkewGraph& h,
                                       const std::optional<std::pair<WeightVector, WeightVector>>& weights,
                                       SearchOptions opts) {
  if (g.order() != h.order()) return std::nullopt;
  std::vector<std::int64_t> wg(g.order(), 1), wh(h.order(), 1);
  if (weights) {
    wg = weights->first.aligned(g);
    wh = weights->second.aligned(h);
  }
  ColoredQuotient qg = colored_quotient(g, wg);
  ColoredQuotient qh = colored_quotient(h, wh);
  check_size(qg.dec.quotient.order(), opts, "quotient");
  check_size(qh.dec.quotient.order(), opts, "quotient");
  if (qg.dec.quotient.order() != qh.dec.quotient.order()) return std::nullopt;

  std::map<std::vector<std::int64_t>, std::int64_t> codes;
  auto cg = encode_colors(codes, qg.weight_sets);
  auto ch = encode_colors(codes, qh.weight_sets);

  std::optional<Permutation> sigma;
  IsoSearch search(qg.dec.quotient, cg, qh.dec.quotient, ch);
  search.run([&](const Permutation& p) {
    sigma = p;
    return false;
  });
  if (!sigma) return std::nullopt;
  return GraphMap(g, h, lift(qg, qh, *sigma, g.order()));
}

}  // namespace lvgraph
