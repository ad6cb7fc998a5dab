#include "lvgraph/json_io.hpp"

#include <fstream>
#include <sstream>

#include "lvgraph/error.hpp"

namespace lvgraph::io {
namespace {

[[noreturn]] void fail(std::string_view source, const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, std::string(source) + ": " + where + ": " + what);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

const std::string& expect_string(const Json& j, std::string_view source, const std::string& where) {
  if (!j.is_string()) fail(source, where, "expected a string, got " + std::string(j.type_name()));
  return j.get_ref<const std::string&>();
}

Rational expect_rational(const Json& j, std::string_view source, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  const std::string& text = expect_string(j, source, where);
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    fail(source, where, e.what());
  }
}

WeightVector weights_from_json(const Json& j, const SkewGraph& g, std::string_view source,
                               const std::string& where) {
  if (!j.is_object()) fail(source, where, "expected an object of vertex weights");
  std::map<std::string, std::int64_t> w;
  for (const auto& v : g.vertices()) w[v] = 1;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string field = where + "." + it.key();
    if (!g.find(it.key())) fail(source, field, "unknown vertex");
    if (!it.value().is_number_integer()) fail(source, field, "weight must be an integer");
    const auto value = it.value().get<std::int64_t>();
    if (value < 1) fail(source, field, "weight must be >= 1");
    w[it.key()] = value;
  }
  return WeightVector(std::move(w));
}

}  // namespace

Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(source, "line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)), e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

GraphFile graph_from_json(const Json& j, std::string_view source) {
  if (!j.is_object()) fail(source, "<root>", "expected an object");
  if (!j.contains("vertices")) fail(source, "vertices", "missing field");
  const Json& jv = j.at("vertices");
  if (!jv.is_array()) fail(source, "vertices", "expected an array");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < jv.size(); ++i)
    vertices.push_back(expect_string(jv[i], source, "vertices[" + std::to_string(i) + "]"));

  std::vector<Arc> arcs;
  if (j.contains("arcs")) {
    const Json& ja = j.at("arcs");
    if (!ja.is_array()) fail(source, "arcs", "expected an array");
    for (std::size_t i = 0; i < ja.size(); ++i) {
      const std::string where = "arcs[" + std::to_string(i) + "]";
      if (!ja[i].is_array() || ja[i].size() != 3) fail(source, where, "expected [from, to, value]");
      arcs.push_back({expect_string(ja[i][0], source, where + "[0]"), expect_string(ja[i][1], source, where + "[1]"),
                      expect_rational(ja[i][2], source, where + "[2]")});
    }
  }

  GraphFile out;
  try {
    out.graph = SkewGraph::create(std::move(vertices), arcs);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(source, "graph", e.what());
  }
  if (j.contains("weights")) {
    out.weights = weights_from_json(j.at("weights"), out.graph, source, "weights");
    out.has_weights = true;
  } else {
    out.weights = WeightVector::ones(out.graph);
  }
  return out;
}

GraphFile read_graph_file(const std::string& path) { return graph_from_json(read_json_file(path), path); }

Json weights_to_json(const WeightVector& w) {
  Json j = Json::object();
  for (const auto& [label, value] : w.entries()) j[label] = value;
  return j;
}

Json graph_to_json(const SkewGraph& g, const WeightVector* weights) {
  Json j;
  j["vertices"] = g.vertices();
  Json arcs = Json::array();
  for (const auto& a : g.arcs()) arcs.push_back({a.from, a.to, a.value.to_string()});
  j["arcs"] = std::move(arcs);
  if (weights != nullptr) {
    Json w = Json::object();
    for (const auto& v : g.vertices()) w[v] = weights->at(v);
    j["weights"] = std::move(w);
  }
  return j;
}

Json linear_map_to_json(const LinearMap& phi) {
  Json rows = Json::array();
  const auto& m = phi.matrix();
  for (std::size_t u = 0; u < m.rows(); ++u) {
    Json row = Json::array();
    for (std::size_t s = 0; s < m.cols(); ++s) row.push_back(m(u, s).to_string());
    rows.push_back(std::move(row));
  }
  return Json{{"rows", std::move(rows)}};
}

LinearMap linear_map_from_json(const Json& j, const LVSystem& domain, const LVSystem& codomain,
                               std::string_view source) {
  if (!j.is_object() || !j.contains("rows")) fail(source, "rows", "missing field");
  const Json& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != codomain.dimension())
    fail(source, "rows", "expected " + std::to_string(codomain.dimension()) + " rows");
  RationalMatrix m(codomain.dimension(), domain.dimension());
  for (std::size_t u = 0; u < rows.size(); ++u) {
    const std::string where = "rows[" + std::to_string(u) + "]";
    if (!rows[u].is_array() || rows[u].size() != domain.dimension())
      fail(source, where, "expected " + std::to_string(domain.dimension()) + " entries");
    for (std::size_t s = 0; s < rows[u].size(); ++s)
      m(u, s) = expect_rational(rows[u][s], source, where + "[" + std::to_string(s) + "]");
  }
  return LinearMap(domain, codomain, std::move(m));
}

Json declone_to_json(const DecloneResult& d) {
  Json j;
  j["quotient"] = graph_to_json(d.quotient);
  Json w = Json::object();
  for (const auto& v : d.quotient.vertices()) w[v] = d.weights.at(v);
  j["weights"] = std::move(w);
  j["classes"] = d.classes;
  Json proj = Json::object();
  const auto& dom = d.projection.domain();
  for (std::size_t s = 0; s < dom.order(); ++s) proj[dom.label(s)] = d.quotient.label(d.projection(s));
  j["projection"] = std::move(proj);
  return j;
}

GraphFile weighted_graph_from_json(const Json& j, std::string_view source) {
  if (j.is_object() && j.contains("quotient")) {
    GraphFile out = graph_from_json(j.at("quotient"), source);
    if (j.contains("weights")) {
      out.weights = weights_from_json(j.at("weights"), out.graph, source, "weights");
      out.has_weights = true;
    }
    return out;
  }
  return graph_from_json(j, source);
}

}  // namespace lvgraph::io
