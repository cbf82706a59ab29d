#include "stclab/congestion.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace stclab {
namespace {

// Path a-b-c, tree = whole graph: every edge crosses only itself.
TEST(CrossEdgeSet, PathTreeEqualsGraph) {
  WeightedGraph g = oracle::path_graph(3);
  SpanningTree t = SpanningTree::of(g, {0, 1});
  EXPECT_EQ(cross_edge_set(g, t, 0), (std::vector<EdgeId>{0}));
  EXPECT_EQ(cross_edge_set(g, t, 1), (std::vector<EdgeId>{1}));
}

// C_4 with the path tree: the unique non-tree edge crosses every tree edge.
TEST(CrossEdgeSet, CycleChordCrossesSeparatingEdges) {
  WeightedGraph g = oracle::cycle_graph(4); // edges 0:(0,1) 1:(1,2) 2:(2,3) 3:(3,0)
  SpanningTree t = SpanningTree::of(g, {0, 1, 2});
  EXPECT_EQ(cross_edge_set(g, t, 1), (std::vector<EdgeId>{1, 3}));
  EXPECT_EQ(cross_edge_set(g, t, 0), (std::vector<EdgeId>{0, 3}));
}

TEST(CrossEdgeSet, Errors) {
  WeightedGraph g = oracle::cycle_graph(4);
  SpanningTree t = SpanningTree::of(g, {0, 1, 2});
  EXPECT_THROW(cross_edge_set(g, t, 3), std::invalid_argument); // not a tree edge
  SpanningTree bad = SpanningTree::of(g, {0, 1});
  EXPECT_THROW(cross_edge_set(g, bad, 0), InvalidTreeError);
}

TEST(CongestionOfEdge, UnitPathIsOne) {
  WeightedGraph g = oracle::path_graph(5);
  SpanningTree t = SpanningTree::of(g, {0, 1, 2, 3});
  for (EdgeId e : t.edge_ids) EXPECT_EQ(congestion_of_edge(g, t, e), 1);
}

// A single weight-3 edge is a bundle of three parallel edges.
TEST(CongestionOfEdge, WeightIsOwnContribution) {
  WeightedGraph g;
  g.add_vertex();
  g.add_vertex();
  g.add_edge(0, 1, 3);
  SpanningTree t = SpanningTree::of(g, {0});
  EXPECT_EQ(congestion_of_edge(g, t, 0), 3);
}

TEST(CongestionOfEdge, DoubleWeightInsideAndOutside) {
  // triangle: (0,1) <1|4> in tree, (1,2) single in tree, (2,0) <2|3> chord
  WeightedGraph g;
  for (int i = 0; i < 3; ++i) g.add_vertex();
  g.add_edge(0, 1, EdgeWeight::dbl(1, 4));
  g.add_edge(1, 2, 1);
  g.add_edge(2, 0, EdgeWeight::dbl(2, 3));
  SpanningTree t = SpanningTree::of(g, {0, 1});
  EXPECT_EQ(congestion_of_edge(g, t, 0), 4 + 2); // own w' plus chord's outside w
  EXPECT_EQ(congestion_of_edge(g, t, 1), 1 + 2);
}

TEST(TreeCongestion, StarIsOne) {
  WeightedGraph g = oracle::star_graph(3);
  SpanningTree t = SpanningTree::of(g, {0, 1, 2});
  EXPECT_EQ(tree_congestion(g, t).max_congestion, 1);
}

TEST(TreeCongestion, CyclePathTreeIsTwo) {
  WeightedGraph g = oracle::cycle_graph(5);
  SpanningTree t = SpanningTree::of(g, {0, 1, 2, 3});
  auto report = tree_congestion(g, t);
  EXPECT_EQ(report.max_congestion, 2);
  for (EdgeId e : t.edge_ids) EXPECT_EQ(report.per_edge.at(e), 2);
}

TEST(TreeCongestion, CompleteGraphStarTreeIsThree) {
  WeightedGraph g = oracle::complete_graph(4); // edges 0..5, star at vertex 0: 0,1,2
  SpanningTree t = SpanningTree::of(g, {0, 1, 2});
  auto report = tree_congestion(g, t);
  EXPECT_EQ(report.max_congestion, 3);
  // cross-check against the brute-force definition
  for (EdgeId e : t.edge_ids)
    EXPECT_EQ(report.per_edge.at(e), oracle::congestion_by_definition(g, t.edge_ids, e));
}

TEST(TreeCongestion, WitnessesContainSelfAndMatchCrossSets) {
  WeightedGraph g = oracle::complete_graph(4);
  SpanningTree t = SpanningTree::of(g, {0, 1, 2});
  auto report = tree_congestion(g, t, true);
  for (EdgeId e : t.edge_ids) {
    const auto& witness = report.witnesses.at(e);
    EXPECT_TRUE(std::binary_search(witness.begin(), witness.end(), e));
    EXPECT_EQ(witness, cross_edge_set(g, t, e));
  }
}

TEST(TreeCongestion, RejectsDisconnectedHost) {
  WeightedGraph g = oracle::path_graph(3);
  g.add_vertex("isolated");
  EXPECT_THROW(tree_congestion(g, SpanningTree::of(g, {0, 1})), InvalidTreeError);
}

// Property: on random connected graphs, the one-pass report agrees with the
// per-edge definition, every edge's congestion is at least its own
// contribution, and each non-tree edge shows up in exactly the cross sets of
// the tree path between its endpoints.
TEST(TreeCongestion, RandomGraphsAgreeWithDefinition) {
  std::mt19937_64 rng(20260810);
  for (int round = 0; round < 60; ++round) {
    WeightedGraph g = oracle::random_connected_graph(rng, 7, 12, 3, round % 3);
    auto trees = oracle::all_spanning_trees(g);
    ASSERT_FALSE(trees.empty());
    const auto& edges = trees[oracle::rng_below(rng, trees.size())];
    SpanningTree t = SpanningTree::of(g, edges);
    auto report = tree_congestion(g, t, true);

    long long worst = 0;
    for (EdgeId e : t.edge_ids) {
      long long expected = oracle::congestion_by_definition(g, t.edge_ids, e);
      EXPECT_EQ(report.per_edge.at(e), expected);
      EXPECT_EQ(congestion_of_edge(g, t, e), expected);
      EXPECT_GE(expected, g.edge(e).weight.own);
      worst = std::max(worst, expected);
    }
    EXPECT_EQ(report.max_congestion, worst);

    for (const Edge& f : g.edges()) {
      if (t.contains(f.id)) continue;
      int appearances = 0;
      for (EdgeId e : t.edge_ids) {
        auto cross = cross_edge_set(g, t, e);
        if (std::binary_search(cross.begin(), cross.end(), f.id)) ++appearances;
      }
      EXPECT_GE(appearances, 1); // partition: every non-tree edge crosses somewhere
    }
  }
}

}  // namespace
}  // namespace stclab
