#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <vector>

#include "stclab/errors.hpp"
#include "stclab/graph.hpp"

namespace stclab {

// Congestion of every tree edge. witnesses[e], when populated, is the
// cross-edge set of e (sorted by edge id, always containing e itself).
struct CongestionReport {
  std::map<EdgeId, long long> per_edge;
  long long max_congestion = 0;
  std::map<EdgeId, std::vector<EdgeId>> witnesses;
};

namespace detail {

struct DisjointSet {
  std::vector<int> parent;

  explicit DisjointSet(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Returns false if x and y were already in the same set.
  bool unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    parent[rx] = ry;
    return true;
  }
};

}  // namespace detail

inline bool is_spanning_tree(const WeightedGraph& g, const std::vector<EdgeId>& edge_ids) {
  if (static_cast<int>(edge_ids.size()) != g.vertex_count() - 1) return false;
  detail::DisjointSet dsu(g.vertex_count());
  for (EdgeId e : edge_ids) {
    if (e < 0 || e >= g.edge_count()) return false;
    const Edge& ed = g.edge(e);
    if (!dsu.unite(ed.u, ed.v)) return false; // cycle or repeated edge
  }
  return true; // n-1 acyclic edges on n vertices always connect
}

inline void validate_spanning_tree(const WeightedGraph& g, const SpanningTree& t) {
  if (t.graph != nullptr && t.graph != &g)
    throw std::invalid_argument("spanning tree is bound to a different graph");
  if (static_cast<int>(t.edge_ids.size()) != g.vertex_count() - 1)
    throw InvalidTreeError("tree has " + std::to_string(t.edge_ids.size()) +
                           " edges, expected " + std::to_string(g.vertex_count() - 1));
  if (!is_spanning_tree(g, t.edge_ids))
    throw InvalidTreeError("edge set is not a spanning tree");
}

// Edges of G whose endpoints are separated by removing e from T; e itself is
// always a member. Sorted by edge id.
inline std::vector<EdgeId> cross_edge_set(const WeightedGraph& g, const SpanningTree& t,
                                          EdgeId e) {
  validate_spanning_tree(g, t);
  if (!t.contains(e))
    throw std::invalid_argument("edge " + std::to_string(e) + " is not in the tree");

  // Two-color the vertices by the components of T - e.
  std::vector<char> side(g.vertex_count(), 0);
  const Edge& cut = g.edge(e);
  std::queue<VertexId> q;
  q.push(cut.u);
  side[cut.u] = 1;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    for (const auto& [w, f] : g.neighbors(v)) {
      if (f == e || !t.contains(f) || side[w]) continue;
      side[w] = 1;
      q.push(w);
    }
  }

  std::vector<EdgeId> crossing;
  for (const Edge& f : g.edges())
    if (side[f.u] != side[f.v]) crossing.push_back(f.id);
  return crossing;
}

inline long long congestion_of_edge(const WeightedGraph& g, const SpanningTree& t,
                                    EdgeId e) {
  long long total = 0;
  for (EdgeId f : cross_edge_set(g, t, e)) {
    const EdgeWeight& w = g.edge(f).weight;
    total += (f == e) ? w.own : w.outside;
  }
  return total;
}

// Congestion of every tree edge in one pass: each non-tree edge (u,v) adds
// its outside weight to every tree edge on the u-to-v tree path, and each
// tree edge starts from its own contribution.
inline CongestionReport tree_congestion(const WeightedGraph& g, const SpanningTree& t,
                                        bool with_witnesses = true) {
  validate_spanning_tree(g, t);

  const int n = g.vertex_count();
  std::vector<VertexId> parent(n, -1);
  std::vector<EdgeId> parent_edge(n, -1);
  std::vector<int> depth(n, 0);
  if (n > 0) {
    std::vector<char> seen(n, 0);
    std::queue<VertexId> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (const auto& [w, f] : g.neighbors(v)) {
        if (!t.contains(f) || seen[w]) continue;
        seen[w] = 1;
        parent[w] = v;
        parent_edge[w] = f;
        depth[w] = depth[v] + 1;
        q.push(w);
      }
    }
  }

  CongestionReport report;
  for (EdgeId e : t.edge_ids) {
    report.per_edge[e] = g.edge(e).weight.own;
    if (with_witnesses) report.witnesses[e] = {e};
  }

  for (const Edge& f : g.edges()) {
    if (t.contains(f.id)) continue;
    VertexId a = f.u, b = f.v;
    while (a != b) {
      VertexId& deeper = depth[a] >= depth[b] ? a : b;
      EdgeId on_path = parent_edge[deeper];
      report.per_edge[on_path] += f.weight.outside;
      if (with_witnesses) report.witnesses[on_path].push_back(f.id);
      deeper = parent[deeper];
    }
  }

  for (const auto& [e, c] : report.per_edge)
    report.max_congestion = std::max(report.max_congestion, c);
  if (with_witnesses)
    for (auto& [e, list] : report.witnesses) std::sort(list.begin(), list.end());
  return report;
}

}  // namespace stclab
