#include "stclab/transform.hpp"

#include <gtest/gtest.h>

#include <random>

#include "stclab/reduction.hpp"
#include "stclab/solver.hpp"
#include "oracles.hpp"

namespace stclab {
namespace {

TEST(ExpandDoubleWeights, IdentityWithoutDoubles) {
  WeightedGraph g = oracle::cycle_graph(5);
  WeightedGraph h = expand_double_weights(g);
  EXPECT_EQ(h.vertex_count(), g.vertex_count());
  EXPECT_EQ(h.edge_count(), g.edge_count());
  for (const Edge& e : g.edges()) {
    EXPECT_EQ(h.edge(e.id).u, e.u);
    EXPECT_EQ(h.edge(e.id).v, e.v);
    EXPECT_EQ(h.edge(e.id).weight, e.weight);
  }
}

TEST(ExpandDoubleWeights, SplitsDoubleIntoPath) {
  WeightedGraph g;
  g.add_vertex("u");
  g.add_vertex("v");
  g.add_edge(0, 1, EdgeWeight::dbl(1, 3));
  WeightedGraph h = expand_double_weights(g);
  ASSERT_EQ(h.vertex_count(), 3);
  ASSERT_EQ(h.edge_count(), 2);
  EXPECT_EQ(h.vertex(2).label, "w@u-v");
  EXPECT_EQ(h.edge(0).weight, EdgeWeight::single(1));
  EXPECT_EQ(h.edge(1).weight, EdgeWeight::single(3));
  EXPECT_TRUE(h.find_edge(0, 2) && h.find_edge(2, 1));
  EXPECT_FALSE(h.find_edge(0, 1).has_value());
}

// Decision preservation on seeded random graphs with w + w' <= K, checked by
// exhaustive enumeration on both sides. The acceptance suite runs the full
// 200-graph version; this is the unit-level smoke of the same property.
TEST(ExpandDoubleWeights, PreservesDecisionAtSmallScale) {
  std::mt19937_64 rng(411);
  for (int round = 0; round < 25; ++round) {
    WeightedGraph g = oracle::random_connected_graph(rng, 6, 10, 2, 1 + round % 2, 5);
    WeightedGraph h = expand_double_weights(g);
    for (int k : {5, 6}) {
      EXPECT_EQ(oracle::stc_at_most_bruteforce(g, k), oracle::stc_at_most_bruteforce(h, k))
          << "round " << round << " K=" << k;
    }
  }
}

TEST(SubdivideEdge, TriangleBecomesC4) {
  WeightedGraph g = oracle::cycle_graph(3);
  WeightedGraph h = subdivide_edge(g, 0);
  EXPECT_EQ(h.vertex_count(), 4);
  EXPECT_EQ(h.edge_count(), 4);
  EXPECT_EQ(stc_naive(g), 2);
  EXPECT_EQ(stc_naive(h), 2);
}

TEST(SubdivideEdge, KeepsWeight) {
  WeightedGraph g = oracle::path_graph(2, 2);
  WeightedGraph h = subdivide_edge(g, 0);
  ASSERT_EQ(h.edge_count(), 2);
  EXPECT_EQ(h.edge(0).weight, EdgeWeight::single(2));
  EXPECT_EQ(h.edge(1).weight, EdgeWeight::single(2));
}

TEST(SubdivideEdge, RejectsDoubleWeights) {
  WeightedGraph g;
  g.add_vertex();
  g.add_vertex();
  g.add_edge(0, 1, EdgeWeight::dbl(1, 2));
  EXPECT_THROW(subdivide_edge(g, 0), std::invalid_argument);
}

TEST(SubdivideEdge, CompleteGraphKeepsStc) {
  WeightedGraph g = oracle::complete_graph(4);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    WeightedGraph h = subdivide_edge(g, e);
    EXPECT_EQ(*stc_exact(h).optimum, 3);
  }
}

TEST(ToSimpleGraph, IdentityOnSimpleUnweighted) {
  WeightedGraph g = oracle::petersen_graph();
  WeightedGraph h = to_simple_graph(g);
  EXPECT_EQ(h.vertex_count(), g.vertex_count());
  EXPECT_EQ(h.edge_count(), g.edge_count());
}

// Two vertices joined by a weight-3 edge: direct edge plus two two-edge
// paths; 8 spanning trees, stc 3.
TEST(ToSimpleGraph, WeightThreeEdge) {
  WeightedGraph g;
  g.add_vertex("u");
  g.add_vertex("v");
  g.add_edge(0, 1, 3);
  WeightedGraph h = to_simple_graph(g);
  EXPECT_EQ(h.vertex_count(), 4);
  EXPECT_EQ(h.edge_count(), 5);
  for (const Edge& e : h.edges()) EXPECT_EQ(e.weight, EdgeWeight::single(1));
  EXPECT_EQ(oracle::matrix_tree_count(h), 8);
  EXPECT_EQ(static_cast<long long>(oracle::all_spanning_trees(h).size()), 8);
  EXPECT_EQ(oracle::stc_by_bruteforce(h), 3);
  EXPECT_EQ(stc_naive(h), 3);
}

// Single-weight realization is unconditionally congestion-preserving, so
// graphs without doubles must agree at every K; doubles preserve the
// decision only under the w + w' <= K hypothesis.
TEST(ToSimpleGraph, DecisionAgreesOnRandomGraphs) {
  std::mt19937_64 rng(997);
  for (int round = 0; round < 15; ++round) {
    bool with_doubles = round % 2 == 1;
    WeightedGraph g = oracle::random_connected_graph(rng, 5, 7, 2, with_doubles, 5);
    WeightedGraph h = to_simple_graph(g);
    int min_k = 1;
    for (const Edge& e : g.edges())
      if (e.weight.twofold) min_k = std::max(min_k, e.weight.outside + e.weight.own);
    for (int k = min_k; k <= min_k + 4; ++k) {
      bool before = is_stc_at_most(g, k).decision == Decision::Yes;
      bool after = is_stc_at_most(h, k).decision == Decision::Yes;
      EXPECT_EQ(before, after) << "round " << round << " K=" << k;
    }
  }
}

// The reduced instance of a two-variable formula at K=5: its weighted and
// simple forms make the same call (every double satisfies w + w' <= 5).
TEST(ToSimpleGraph, ReducedGraphDecisionAgreesAtK5) {
  auto phi = parse_dimacs("p cnf 2 3\n1 2 0\n1 -2 0\n-1 2 0\n");
  auto [g, map] = reduce(phi, 5);
  WeightedGraph h = to_simple_graph(g);
  EXPECT_EQ(is_stc_at_most(g, 5).decision, Decision::Yes);
  EXPECT_EQ(is_stc_at_most(h, 5).decision, Decision::Yes);
}

}  // namespace
}  // namespace stclab
