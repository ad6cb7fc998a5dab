#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "lvgraph/graph.hpp"
#include "lvgraph/lv.hpp"

// JSON forms shared by the CLI and tests.
//
//   graph:       {"vertices":["s",...], "arcs":[["s","t","p/q"],...], "weights":{"s":2,...}}
//   linear map:  {"rows":[["1","0",...],...]}, one row per codomain vertex
//   declone:     {"quotient":<graph>, "weights":{...}, "classes":[[...]], "projection":{"s":"u",...}}
//
// Malformed input throws Error(Parse) naming the source, the line for syntax
// errors, and the offending field otherwise.

namespace lvgraph::io {

using Json = nlohmann::ordered_json;

struct GraphFile {
  SkewGraph graph;
  /// Absent in the file means all ones.
  WeightVector weights;
  bool has_weights = false;
};

Json parse_json(std::string_view text, std::string_view source = "<input>");
Json read_json_file(const std::string& path);

GraphFile graph_from_json(const Json& j, std::string_view source = "<input>");
GraphFile read_graph_file(const std::string& path);

Json graph_to_json(const SkewGraph& g, const WeightVector* weights = nullptr);
Json weights_to_json(const WeightVector& w);

Json linear_map_to_json(const LinearMap& phi);
LinearMap linear_map_from_json(const Json& j, const LVSystem& domain, const LVSystem& codomain,
                               std::string_view source = "<input>");

Json declone_to_json(const DecloneResult& d);
/// Accepts a declone document (quotient + weights) or a plain graph file.
GraphFile weighted_graph_from_json(const Json& j, std::string_view source = "<input>");

}  // namespace lvgraph::io
