#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "bkm/graph.hpp"

namespace bkm {

// Wire format:
//   {"vertices":[{"id":int,"kind":"re"|"im"},...],"edges":[[int,int],...]}

inline Graph graph_from_json(const nlohmann::json& doc) {
  auto bad = [](const std::string& what) { fail(ErrorCode::invalid_graph, "graph JSON: " + what); };
  if (!doc.is_object()) bad("top level must be an object");
  for (auto& [key, value] : doc.items())
    if (key != "vertices" && key != "edges") bad("unexpected key \"" + key + "\"");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) bad("\"vertices\" must be an array");

  std::vector<VertexSpec> specs;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_object()) bad("each vertex must be an object");
    if (!v.contains("id") || !v["id"].is_number_integer()) bad("vertex \"id\" must be an integer");
    if (!v.contains("kind") || !v["kind"].is_string()) bad("vertex \"kind\" must be \"re\" or \"im\"");
    for (auto& [key, value] : v.items())
      if (key != "id" && key != "kind") bad("unexpected vertex key \"" + key + "\"");
    auto kind = v["kind"].get<std::string>();
    if (kind != "re" && kind != "im") bad("vertex \"kind\" must be \"re\" or \"im\", got \"" + kind + "\"");
    auto id = v["id"].get<long long>();
    if (id < 0 || id > 1'000'000'000) bad("vertex id out of range: " + std::to_string(id));
    specs.push_back({static_cast<VertexId>(id), kind == "re" ? VertexKind::real : VertexKind::imaginary});
  }

  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) bad("\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        bad("each edge must be a pair of integers");
      edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
    }
  }
  return new_graph(std::move(specs), edges);
}

inline nlohmann::json to_json(const Graph& g) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (std::size_t i = 0; i < g.size(); ++i)
    doc["vertices"].push_back(
        {{"id", g.id(i)}, {"kind", g.kind_at(i) == VertexKind::real ? "re" : "im"}});
  doc["edges"] = nlohmann::json::array();
  for (auto [a, b] : g.edges()) doc["edges"].push_back({a, b});
  return doc;
}

inline Graph parse_graph(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::invalid_graph, std::string("graph JSON: ") + e.what());
  }
  return graph_from_json(doc);
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::usage, "cannot open graph file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

}  // namespace bkm
