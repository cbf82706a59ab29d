#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stclab/congestion.hpp"
#include "stclab/errors.hpp"
#include "stclab/graph.hpp"

namespace stclab {

using nlohmann::json;

// Canonical form used everywhere: key-sorted objects (nlohmann's default
// object ordering), no whitespace, one trailing newline when written out.
inline std::string canonical_dump(const json& j) { return j.dump(); }

inline uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline json graph_to_json(const WeightedGraph& g) {
  json vertices = json::array();
  for (const Vertex& v : g.vertices()) {
    json jv{{"id", v.id}};
    if (!v.label.empty()) jv["label"] = v.label;
    vertices.push_back(std::move(jv));
  }
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    json w = e.weight.twofold ? json::array({e.weight.outside, e.weight.own})
                              : json::array({e.weight.outside});
    edges.push_back(json{{"id", e.id}, {"u", e.u}, {"v", e.v}, {"w", std::move(w)}});
  }
  return json{{"edges", std::move(edges)}, {"vertices", std::move(vertices)}};
}

// Digest binding trees (and other artifacts) to the graph they describe.
// Computed over the canonical JSON serialization, not the input file bytes.
inline std::string graph_hash(const WeightedGraph& g) {
  uint64_t h = fnv1a64(canonical_dump(graph_to_json(g)));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

inline WeightedGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw ParseError("graph JSON must be an object with 'vertices' and 'edges'");
  const json& jv = j.at("vertices");
  const json& je = j.at("edges");
  if (!jv.is_array() || !je.is_array())
    throw ParseError("'vertices' and 'edges' must be arrays");

  std::vector<std::string> labels(jv.size());
  std::vector<char> seen(jv.size(), 0);
  for (const json& v : jv) {
    if (!v.is_object() || !v.contains("id") || !v.at("id").is_number_integer())
      throw ParseError("each vertex needs an integer 'id'");
    long long id = v.at("id").get<long long>();
    if (id < 0 || id >= static_cast<long long>(jv.size()) || seen[id])
      throw ParseError("vertex ids must be dense from 0; bad id " + std::to_string(id));
    seen[id] = 1;
    if (v.contains("label")) labels[id] = v.at("label").get<std::string>();
  }

  WeightedGraph g;
  for (const std::string& label : labels) g.add_vertex(label);

  struct Parsed {
    VertexId u, v;
    EdgeWeight w;
  };
  std::vector<Parsed> edges(je.size(), Parsed{0, 0, EdgeWeight{}});
  std::vector<char> eseen(je.size(), 0);
  for (const json& e : je) {
    if (!e.is_object() || !e.contains("id") || !e.contains("u") || !e.contains("v") ||
        !e.contains("w"))
      throw ParseError("each edge needs 'id', 'u', 'v' and 'w'");
    long long id = e.at("id").get<long long>();
    if (id < 0 || id >= static_cast<long long>(je.size()) || eseen[id])
      throw ParseError("edge ids must be dense from 0; bad id " + std::to_string(id));
    eseen[id] = 1;
    const json& w = e.at("w");
    if (!w.is_array() || w.empty() || w.size() > 2)
      throw ParseError("edge weight must be [w] or [w, w']");
    EdgeWeight weight;
    try {
      weight = w.size() == 1 ? EdgeWeight::single(w[0].get<int>())
                             : EdgeWeight::dbl(w[0].get<int>(), w[1].get<int>());
    } catch (const std::invalid_argument& ex) {
      throw ParseError(std::string("edge ") + std::to_string(id) + ": " + ex.what());
    }
    edges[id] = Parsed{e.at("u").get<VertexId>(), e.at("v").get<VertexId>(), weight};
  }
  for (const Parsed& p : edges) {
    try {
      g.add_edge(p.u, p.v, p.w);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(ex.what());
    }
  }
  return g;
}

inline json tree_to_json(const WeightedGraph& g, const SpanningTree& t) {
  return json{{"edges", t.edge_ids}, {"graph_hash", graph_hash(g)}};
}

// Reads a tree for graph g, checking that the digest recorded in the file
// matches g. Structural validity is checked by the consuming operation.
inline SpanningTree tree_from_json(const WeightedGraph& g, const json& j) {
  if (!j.is_object() || !j.contains("graph_hash") || !j.contains("edges"))
    throw ParseError("tree JSON must be an object with 'graph_hash' and 'edges'");
  std::string expected = graph_hash(g);
  std::string got = j.at("graph_hash").get<std::string>();
  if (got != expected)
    throw ParseError("tree was built for a different graph (hash " + got +
                     ", expected " + expected + ")");
  std::vector<EdgeId> ids = j.at("edges").get<std::vector<EdgeId>>();
  for (EdgeId e : ids)
    if (e < 0 || e >= g.edge_count())
      throw ParseError("tree references unknown edge id " + std::to_string(e));
  return SpanningTree::of(g, std::move(ids));
}

inline json congestion_report_to_json(const CongestionReport& r) {
  json per_edge = json::object();
  for (const auto& [e, c] : r.per_edge) per_edge[std::to_string(e)] = c;
  json out{{"max_congestion", r.max_congestion}, {"per_edge", std::move(per_edge)}};
  if (!r.witnesses.empty()) {
    json wit = json::object();
    for (const auto& [e, list] : r.witnesses) wit[std::to_string(e)] = list;
    out["witnesses"] = std::move(wit);
  }
  return out;
}

inline std::string weight_text(const EdgeWeight& w) {
  if (w.twofold)
    return "<" + std::to_string(w.outside) + "|" + std::to_string(w.own) + ">";
  return std::to_string(w.outside);
}

// Deterministic DOT export: vertices then edges, both in id order. When a
// tree is given, tree edges are drawn solid and non-tree edges dashed.
inline std::string to_dot(const WeightedGraph& g, const SpanningTree* tree = nullptr) {
  std::ostringstream out;
  out << "graph stc {\n";
  for (const Vertex& v : g.vertices()) {
    out << "  " << v.id;
    if (!v.label.empty()) out << " [label=\"" << v.label << "\"]";
    out << ";\n";
  }
  for (const Edge& e : g.edges()) {
    out << "  " << e.u << " -- " << e.v << " [label=\"" << weight_text(e.weight) << "\"";
    if (tree != nullptr)
      out << ", style=" << (tree->contains(e.id) ? "solid" : "dashed");
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace stclab
