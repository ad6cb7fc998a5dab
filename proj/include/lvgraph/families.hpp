#pragma once

#include <string>
#include <vector>

#include "lvgraph/graph.hpp"

// Graphs of the standard integrable LV examples. Vertices are labeled
// "1".."n"; index arithmetic is cyclic where the family is.

namespace lvgraph::families {

/// Kac-van Moerbeke KM(n): the n-circuit, a_{i,i+1} = 1 cyclically. n >= 3.
SkewGraph km(int n);

/// Bogoyavlenskij B(n,k): arcs from every vertex to the next k vertices.
/// Requires 1 <= k < n/2.
SkewGraph bogo(int n, int k);

/// LV(n,0): the transitive tournament, a_{i,j} = 1 for i < j. n >= 1.
SkewGraph lv_n0(int n);

/// Open KM chain 1 -> 2 -> ... -> n. n >= 2.
SkewGraph open_km(int n);

/// Induced subgraph on the complement of drop; throws Error(UnknownLabel).
SkewGraph delete_vertices(const SkewGraph& g, const std::vector<std::string>& drop);

/// Disjoint union; labels of b get the given prefix if they collide with a.
SkewGraph disjoint_union(const SkewGraph& a, const SkewGraph& b, const std::string& prefix = "'");

}  // namespace lvgraph::families
