#include "lvgraph/graph.hpp"

#include <algorithm>
#include <map>

#include "lvgraph/error.hpp"

namespace lvgraph {

SkewGraph::SkewGraph(std::vector<std::string> vertices, RationalMatrix adjacency)
    : vertices_(std::move(vertices)), adjacency_(std::move(adjacency)) {
  index_.reserve(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second)
      throw Error(ErrorKind::DuplicateVertex, "vertex \"" + vertices_[i] + "\" listed twice");
  }
}

SkewGraph SkewGraph::create(std::vector<std::string> vertices, const std::vector<Arc>& arcs) {
  const std::size_t n = vertices.size();
  SkewGraph g(std::move(vertices), RationalMatrix(n, n));
  // Pairs seen so far, keyed (s, t) as given.
  std::map<std::pair<std::size_t, std::size_t>, Rational> given;
  for (const Arc& arc : arcs) {
    std::size_t s = g.index_of(arc.from);
    std::size_t t = g.index_of(arc.to);
    if (s == t) {
      if (!arc.value.is_zero())
        throw Error(ErrorKind::SelfLoop, "nonzero arc value on (" + arc.from + ", " + arc.from + ")");
      continue;
    }
    auto same = given.find({s, t});
    if (same != given.end() && same->second != arc.value)
      throw Error(ErrorKind::SkewConflict, "arc (" + arc.from + ", " + arc.to + ") given twice with different values");
    auto reverse = given.find({t, s});
    if (reverse != given.end() && reverse->second != -arc.value)
      throw Error(ErrorKind::SkewConflict, "a(" + arc.from + "," + arc.to + ") = " + arc.value.to_string() +
                                               " but a(" + arc.to + "," + arc.from + ") = " + reverse->second.to_string());
    given[{s, t}] = arc.value;
    g.adjacency_(s, t) = arc.value;
    g.adjacency_(t, s) = -arc.value;
  }
  return g;
}

SkewGraph SkewGraph::from_matrix(std::vector<std::string> vertices, const RationalMatrix& adjacency) {
  if (adjacency.rows() != vertices.size() || adjacency.cols() != vertices.size())
    throw Error(ErrorKind::DimensionMismatch, "adjacency shape does not match vertex count");
  for (std::size_t i = 0; i < adjacency.rows(); ++i) {
    if (!adjacency(i, i).is_zero()) throw Error(ErrorKind::SelfLoop, "nonzero diagonal at " + vertices[i]);
    for (std::size_t j = i + 1; j < adjacency.cols(); ++j)
      if (adjacency(i, j) != -adjacency(j, i))
        throw Error(ErrorKind::SkewConflict, "matrix not skew-symmetric at (" + vertices[i] + ", " + vertices[j] + ")");
  }
  return SkewGraph(std::move(vertices), adjacency);
}

std::optional<std::size_t> SkewGraph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SkewGraph::index_of(std::string_view label) const {
  auto i = find(label);
  if (!i) throw Error(ErrorKind::UnknownLabel, "no vertex \"" + std::string(label) + "\"");
  return *i;
}

std::vector<Arc> SkewGraph::arcs() const {
  std::vector<Arc> out;
  for (std::size_t s = 0; s < order(); ++s)
    for (std::size_t t = s + 1; t < order(); ++t) {
      const Rational& a = adjacency_(s, t);
      if (a.is_zero()) continue;
      if (a.sign() > 0)
        out.push_back({vertices_[s], vertices_[t], a});
      else
        out.push_back({vertices_[t], vertices_[s], -a});
    }
  return out;
}

// ---------------------------------------------------------------------------

WeightVector::WeightVector(std::map<std::string, std::int64_t> weights) : weights_(std::move(weights)) {
  for (const auto& [label, w] : weights_)
    if (w < 1) throw Error(ErrorKind::BadParameter, "weight of \"" + label + "\" must be >= 1");
}

WeightVector WeightVector::ones(const SkewGraph& g) {
  std::map<std::string, std::int64_t> w;
  for (const auto& v : g.vertices()) w[v] = 1;
  return WeightVector(std::move(w));
}

WeightVector WeightVector::from_aligned(const SkewGraph& g, std::span<const std::int64_t> weights) {
  if (weights.size() != g.order())
    throw Error(ErrorKind::WeightDomainMismatch, "expected " + std::to_string(g.order()) + " weights, got " +
                                                     std::to_string(weights.size()));
  std::map<std::string, std::int64_t> w;
  for (std::size_t i = 0; i < weights.size(); ++i) w[g.label(i)] = weights[i];
  return WeightVector(std::move(w));
}

std::int64_t WeightVector::at(std::string_view label) const {
  auto it = weights_.find(std::string(label));
  if (it == weights_.end()) throw Error(ErrorKind::UnknownLabel, "no weight for \"" + std::string(label) + "\"");
  return it->second;
}

std::int64_t WeightVector::total() const noexcept {
  std::int64_t sum = 0;
  for (const auto& [_, w] : weights_) sum += w;
  return sum;
}

bool WeightVector::matches(const SkewGraph& g) const {
  if (weights_.size() != g.order()) return false;
  return std::all_of(g.vertices().begin(), g.vertices().end(),
                     [&](const std::string& v) { return weights_.count(v) == 1; });
}

std::vector<std::int64_t> WeightVector::aligned(const SkewGraph& g) const {
  if (!matches(g)) throw Error(ErrorKind::WeightDomainMismatch, "weight labels differ from the graph's vertices");
  std::vector<std::int64_t> out;
  out.reserve(g.order());
  for (const auto& v : g.vertices()) out.push_back(weights_.at(v));
  return out;
}

// ---------------------------------------------------------------------------

GraphMap::GraphMap(SkewGraph domain, SkewGraph codomain, std::vector<std::size_t> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (images_.size() != domain_.order())
    throw Error(ErrorKind::DimensionMismatch, "map is not total on the domain");
  for (std::size_t img : images_)
    if (img >= codomain_.order()) throw Error(ErrorKind::UnknownLabel, "image outside the codomain");
}

GraphMap GraphMap::from_labels(SkewGraph domain, SkewGraph codomain, const std::map<std::string, std::string>& images) {
  std::vector<std::size_t> idx(domain.order());
  for (std::size_t s = 0; s < domain.order(); ++s) {
    auto it = images.find(domain.label(s));
    if (it == images.end()) throw Error(ErrorKind::UnknownLabel, "no image for \"" + domain.label(s) + "\"");
    idx[s] = codomain.index_of(it->second);
  }
  if (images.size() != domain.order()) {
    for (const auto& [from, _] : images) domain.index_of(from);
  }
  return GraphMap(std::move(domain), std::move(codomain), std::move(idx));
}

GraphMap GraphMap::identity(const SkewGraph& g) {
  std::vector<std::size_t> idx(g.order());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return GraphMap(g, g, std::move(idx));
}

bool GraphMap::is_surjective() const {
  std::vector<bool> hit(codomain_.order(), false);
  for (std::size_t img : images_) hit[img] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool GraphMap::is_bijective() const { return domain_.order() == codomain_.order() && is_surjective(); }

std::map<std::string, std::string> GraphMap::as_labels() const {
  std::map<std::string, std::string> out;
  for (std::size_t s = 0; s < images_.size(); ++s) out[domain_.label(s)] = codomain_.label(images_[s]);
  return out;
}

GraphMap compose(const GraphMap& second, const GraphMap& first) {
  if (!(first.codomain() == second.domain()))
    throw Error(ErrorKind::PreconditionFailed, "maps do not compose: codomain differs from domain");
  std::vector<std::size_t> idx(first.domain().order());
  for (std::size_t s = 0; s < idx.size(); ++s) idx[s] = second(first(s));
  return GraphMap(first.domain(), second.codomain(), std::move(idx));
}

// ---------------------------------------------------------------------------

bool is_graph_morphism(const GraphMap& m) {
  const SkewGraph& g = m.domain();
  const SkewGraph& h = m.codomain();
  for (std::size_t s = 0; s < g.order(); ++s)
    for (std::size_t t = s + 1; t < g.order(); ++t)
      if (h.arc(m(s), m(t)) != g.arc(s, t)) return false;
  return true;
}

bool is_weighted_morphism(const GraphMap& m, const WeightVector& w, const WeightVector& w_target) {
  if (!w.matches(m.domain()) || !w_target.matches(m.codomain()))
    throw Error(ErrorKind::WeightDomainMismatch, "weights do not cover the map's graphs");
  if (!is_graph_morphism(m)) return false;
  auto wd = w.aligned(m.domain());
  auto wc = w_target.aligned(m.codomain());
  for (std::size_t s = 0; s < wd.size(); ++s)
    if (wc[m(s)] > wd[s]) return false;
  return true;
}

std::string clone_label(std::string_view vertex, std::int64_t i) {
  return std::string(vertex) + "#" + std::to_string(i);
}

SkewGraph clone_graph(const SkewGraph& g, const WeightVector& w) {
  auto weights = w.aligned(g);
  std::vector<std::string> labels;
  std::vector<std::size_t> parent;
  for (std::size_t s = 0; s < g.order(); ++s)
    for (std::int64_t i = 1; i <= weights[s]; ++i) {
      labels.push_back(clone_label(g.label(s), i));
      parent.push_back(s);
    }
  RationalMatrix adj(labels.size(), labels.size());
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = 0; b < labels.size(); ++b) adj(a, b) = g.arc(parent[a], parent[b]);
  return SkewGraph::from_matrix(std::move(labels), adj);
}

DecloneResult declone(const SkewGraph& g) {
  const std::size_t n = g.order();
  std::map<std::vector<Rational>, std::size_t> class_by_row;
  std::vector<std::size_t> class_of(n);
  std::vector<std::size_t> representative;
  std::vector<std::vector<std::string>> classes;
  for (std::size_t s = 0; s < n; ++s) {
    auto [it, inserted] = class_by_row.emplace(g.row(s), classes.size());
    if (inserted) {
      representative.push_back(s);
      classes.emplace_back();
    }
    class_of[s] = it->second;
    classes[it->second].push_back(g.label(s));
  }

  const std::size_t m = classes.size();
  std::vector<std::string> labels;
  RationalMatrix adj(m, m);
  std::map<std::string, std::int64_t> weights;
  for (std::size_t c = 0; c < m; ++c) {
    labels.push_back(g.label(representative[c]));
    weights[labels.back()] = static_cast<std::int64_t>(classes[c].size());
    for (std::size_t d = 0; d < m; ++d) adj(c, d) = g.arc(representative[c], representative[d]);
  }
  SkewGraph quotient = SkewGraph::from_matrix(std::move(labels), adj);
  GraphMap projection(g, quotient, class_of);
  return DecloneResult{std::move(quotient), WeightVector(std::move(weights)), std::move(projection),
                       std::move(classes), std::move(class_of)};
}

bool is_irreducible(const SkewGraph& g) {
  for (std::size_t s = 0; s < g.order(); ++s)
    for (std::size_t t = s + 1; t < g.order(); ++t) {
      bool same = true;
      for (std::size_t u = 0; u < g.order() && same; ++u) same = g.arc(s, u) == g.arc(t, u);
      if (same) return false;
    }
  return true;
}

GraphMap declone_morphism(const GraphMap& m) {
  if (!is_graph_morphism(m)) throw Error(ErrorKind::NotMorphism, "map is not a graph morphism");
  if (!m.is_surjective()) throw Error(ErrorKind::NotSurjective, "map is not surjective");
  DecloneResult src = declone(m.domain());
  DecloneResult dst = declone(m.codomain());
  const std::size_t unset = src.quotient.order();
  std::vector<std::size_t> images(src.quotient.order(), unset);
  for (std::size_t s = 0; s < m.domain().order(); ++s) {
    std::size_t c = src.class_of[s];
    std::size_t image = dst.class_of[m(s)];
    if (images[c] == unset) {
      images[c] = image;
    } else if (images[c] != image) {
      // Cannot happen for a surjective morphism: s ~ t iff Phi(s) ~ Phi(t).
      throw Error(ErrorKind::PreconditionFailed, "equivalent vertices map to different classes");
    }
  }
  return GraphMap(src.quotient, dst.quotient, std::move(images));
}

SkewGraph induced_subgraph(const SkewGraph& g, std::span<const std::size_t> keep) {
  std::vector<std::string> labels;
  RationalMatrix adj(keep.size(), keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    labels.push_back(g.label(keep[a]));
    for (std::size_t b = 0; b < keep.size(); ++b) adj(a, b) = g.arc(keep[a], keep[b]);
  }
  return SkewGraph::from_matrix(std::move(labels), adj);
}

SkewGraph permute_vertices(const SkewGraph& g, const Permutation& perm) {
  if (perm.size() != g.order()) throw Error(ErrorKind::DimensionMismatch, "permutation degree differs from graph order");
  RationalMatrix adj(g.order(), g.order());
  for (std::size_t s = 0; s < g.order(); ++s)
    for (std::size_t t = 0; t < g.order(); ++t) adj(perm[s], perm[t]) = g.arc(s, t);
  return SkewGraph::from_matrix(g.vertices(), adj);
}

}  // namespace lvgraph
