#pragma once

#include <string>

#include "stclab/graph.hpp"

namespace stclab {

namespace detail {

inline std::string split_label(const WeightedGraph& g, VertexId u, VertexId v) {
  return "w@" + g.vertex_name(u) + "-" + g.vertex_name(v);
}

}  // namespace detail

// Replaces every double-weighted edge (u,v) <w|w'> by a fresh vertex x and
// single edges (u,x) of weight w and (x,v) of weight w'. Identity on graphs
// without double weights. The decision "stc(G) <= K" is preserved whenever
// every double weight satisfies w + w' <= K.
inline WeightedGraph expand_double_weights(const WeightedGraph& g) {
  WeightedGraph out;
  for (const Vertex& v : g.vertices()) out.add_vertex(v.label);
  for (const Edge& e : g.edges()) {
    if (!e.weight.twofold) {
      out.add_edge(e.u, e.v, e.weight);
    } else {
      VertexId mid = out.add_vertex(detail::split_label(g, e.u, e.v));
      out.add_edge(e.u, mid, EdgeWeight::single(e.weight.outside));
      out.add_edge(mid, e.v, EdgeWeight::single(e.weight.own));
    }
  }
  return out;
}

// Replaces the single-weighted edge e = (u,v) of weight w by a path u-x-v
// whose two edges both carry weight w. Spanning tree congestion is invariant
// under this operation.
inline WeightedGraph subdivide_edge(const WeightedGraph& g, EdgeId e) {
  const Edge& target = g.edge(e);
  if (target.weight.twofold)
    throw std::invalid_argument(
        "cannot subdivide a double-weighted edge; expand double weights first");
  WeightedGraph out;
  for (const Vertex& v : g.vertices()) out.add_vertex(v.label);
  for (const Edge& f : g.edges())
    if (f.id != e) out.add_edge(f.u, f.v, f.weight);
  VertexId mid = out.add_vertex(detail::split_label(g, target.u, target.v));
  out.add_edge(target.u, mid, target.weight);
  out.add_edge(mid, target.v, target.weight);
  return out;
}

// Converts to a simple unweighted graph with the same stc decision for every
// K: double weights are expanded, then each weight-w edge (u,v) with w >= 2
// is realized as the direct edge (u,v) plus w-1 two-edge paths u-x_k-v, all
// of weight 1.
inline WeightedGraph to_simple_graph(const WeightedGraph& g) {
  WeightedGraph expanded = expand_double_weights(g);
  WeightedGraph out;
  for (const Vertex& v : expanded.vertices()) out.add_vertex(v.label);
  for (const Edge& e : expanded.edges()) {
    out.add_edge(e.u, e.v, EdgeWeight::single(1));
    for (int k = 1; k < e.weight.outside; ++k) {
      VertexId mid = out.add_vertex(detail::split_label(expanded, e.u, e.v) + "#" +
                                    std::to_string(k));
      out.add_edge(e.u, mid, EdgeWeight::single(1));
      out.add_edge(mid, e.v, EdgeWeight::single(1));
    }
  }
  return out;
}

}  // namespace stclab
