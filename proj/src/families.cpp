#include "lvgraph/families.hpp"

#include <set>

#include "lvgraph/error.hpp"

namespace lvgraph::families {
namespace {

std::vector<std::string> numbered(int n) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace

SkewGraph km(int n) {
  if (n < 3) throw Error(ErrorKind::BadParameter, "km(n) needs n >= 3, got " + std::to_string(n));
  return bogo(n, 1);
}

SkewGraph bogo(int n, int k) {
  if (k < 1 || 2 * k >= n)
    throw Error(ErrorKind::BadParameter,
                "bogo(n,k) needs 1 <= k < n/2, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  auto labels = numbered(n);
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= k; ++j) arcs.push_back({labels[i], labels[(i + j) % n], Rational(1)});
  return SkewGraph::create(std::move(labels), arcs);
}

SkewGraph lv_n0(int n) {
  if (n < 1) throw Error(ErrorKind::BadParameter, "lv_n0(n) needs n >= 1, got " + std::to_string(n));
  auto labels = numbered(n);
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) arcs.push_back({labels[i], labels[j], Rational(1)});
  return SkewGraph::create(std::move(labels), arcs);
}

SkewGraph open_km(int n) {
  if (n < 2) throw Error(ErrorKind::BadParameter, "open_km(n) needs n >= 2, got " + std::to_string(n));
  auto labels = numbered(n);
  std::vector<Arc> arcs;
  for (int i = 0; i + 1 < n; ++i) arcs.push_back({labels[i], labels[i + 1], Rational(1)});
  return SkewGraph::create(std::move(labels), arcs);
}

SkewGraph delete_vertices(const SkewGraph& g, const std::vector<std::string>& drop) {
  std::set<std::size_t> dropped;
  for (const auto& label : drop) dropped.insert(g.index_of(label));
  std::vector<std::size_t> keep;
  for (std::size_t s = 0; s < g.order(); ++s)
    if (!dropped.count(s)) keep.push_back(s);
  return induced_subgraph(g, keep);
}

SkewGraph disjoint_union(const SkewGraph& a, const SkewGraph& b, const std::string& prefix) {
  std::vector<std::string> labels = a.vertices();
  for (const auto& v : b.vertices()) labels.push_back(a.find(v) ? prefix + v : v);
  const std::size_t n = a.order() + b.order();
  RationalMatrix adj(n, n);
  for (std::size_t s = 0; s < a.order(); ++s)
    for (std::size_t t = 0; t < a.order(); ++t) adj(s, t) = a.arc(s, t);
  for (std::size_t s = 0; s < b.order(); ++s)
    for (std::size_t t = 0; t < b.order(); ++t) adj(a.order() + s, a.order() + t) = b.arc(s, t);
  return SkewGraph::from_matrix(std::move(labels), adj);
}

}  // namespace lvgraph::families
