#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stclab/errors.hpp"

namespace stclab {

using VertexId = int;
using EdgeId = int;

// Edge weight, single or double. A single weight w stands for a bundle of w
// parallel edges. A double weight <w|w'> contributes w to the congestion of
// other tree edges it crosses, and w' to its own congestion when it is a
// tree edge. Single(w) behaves like <w|w>.
struct EdgeWeight {
  int outside = 1;      // contribution when crossing another tree edge
  int own = 1;          // contribution to its own congestion as a tree edge
  bool twofold = false; // true for <w|w'> weights, even when w == w'

  static EdgeWeight single(int w) {
    if (w < 1) throw std::invalid_argument("edge weight must be positive");
    return {w, w, false};
  }
  static EdgeWeight dbl(int w, int w_prime) {
    if (w < 1 || w_prime < w)
      throw std::invalid_argument("double weight requires 1 <= w <= w'");
    return {w, w_prime, true};
  }

  friend bool operator==(const EdgeWeight&, const EdgeWeight&) = default;
};

struct Vertex {
  VertexId id = 0;
  std::string label; // optional tag ("r", "x1", ...); empty means unlabeled
};

struct Edge {
  EdgeId id = 0;
  VertexId u = 0;
  VertexId v = 0;
  EdgeWeight weight;

  VertexId other(VertexId w) const { return w == u ? v : u; }
  bool connects(VertexId a, VertexId b) const {
    return (u == a && v == b) || (u == b && v == a);
  }
};

// Undirected graph with weighted edges. Ids are dense, assigned in insertion
// order, and never reused. No self-loops; at most one edge per vertex pair
// (multiplicities are expressed through weights). Instances are intended to
// be built once and then used read-only; all algorithms take const graphs.
class WeightedGraph {
 public:
  VertexId add_vertex(std::string label = "") {
    VertexId id = static_cast<VertexId>(vertices_.size());
    vertices_.push_back(Vertex{id, std::move(label)});
    adjacency_.emplace_back();
    return id;
  }

  EdgeId add_edge(VertexId u, VertexId v, EdgeWeight weight) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (find_edge(u, v))
      throw std::invalid_argument("duplicate edge between vertices " +
                                  std::to_string(u) + " and " + std::to_string(v));
    EdgeId id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(Edge{id, u, v, weight});
    adjacency_[u].emplace_back(v, id);
    adjacency_[v].emplace_back(u, id);
    return id;
  }

  EdgeId add_edge(VertexId u, VertexId v, int w) {
    return add_edge(u, v, EdgeWeight::single(w));
  }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Vertex& vertex(VertexId v) const {
    check_vertex(v);
    return vertices_[v];
  }
  const Edge& edge(EdgeId e) const {
    if (e < 0 || e >= edge_count())
      throw std::invalid_argument("edge id out of range: " + std::to_string(e));
    return edges_[e];
  }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Neighbors of v as (adjacent vertex, connecting edge id), insertion order.
  const std::vector<std::pair<VertexId, EdgeId>>& neighbors(VertexId v) const {
    check_vertex(v);
    return adjacency_[v];
  }

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& shorter = adjacency_[u].size() <= adjacency_[v].size()
                              ? adjacency_[u]
                              : adjacency_[v];
    VertexId target = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
    for (const auto& [w, e] : shorter)
      if (w == target) return e;
    return std::nullopt;
  }

  // Human-readable vertex name: the label when set, else the id.
  std::string vertex_name(VertexId v) const {
    const Vertex& vx = vertex(v);
    return vx.label.empty() ? std::to_string(vx.id) : vx.label;
  }

  bool is_connected() const {
    if (vertices_.empty()) return true;
    std::vector<char> seen(vertices_.size(), 0);
    std::queue<VertexId> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (const auto& [w, e] : adjacency_[v]) {
        (void)e;
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          q.push(w);
        }
      }
    }
    return reached == vertex_count();
  }

 private:
  void check_vertex(VertexId v) const {
    if (v < 0 || v >= vertex_count())
      throw std::invalid_argument("vertex id out of range: " + std::to_string(v));
  }

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency_;
};

// A spanning tree of a host graph, stored as a sorted set of edge ids.
struct SpanningTree {
  const WeightedGraph* graph = nullptr;
  std::vector<EdgeId> edge_ids;

  bool contains(EdgeId e) const {
    return std::binary_search(edge_ids.begin(), edge_ids.end(), e);
  }

  static SpanningTree of(const WeightedGraph& g, std::vector<EdgeId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return SpanningTree{&g, std::move(ids)};
  }
};

}  // namespace stclab
