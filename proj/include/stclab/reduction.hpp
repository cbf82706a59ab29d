#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stclab/cnf.hpp"
#include "stclab/congestion.hpp"
#include "stclab/graph.hpp"
#include "stclab/serialize.hpp"
#include "stclab/solver.hpp"

namespace stclab {

// Derived weight parameters k_i = K - i. The construction needs k4 >= 1,
// i.e. K >= 5.
struct KParams {
  int K = 5;
  int k1 = 4, k2 = 3, k3 = 2, k4 = 1;

  static KParams for_k(int K) {
    if (K < 5)
      throw std::invalid_argument("the reduction is defined for K >= 5 only (got K=" +
                                  std::to_string(K) + ")");
    return KParams{K, K - 1, K - 2, K - 3, K - 4};
  }
};

// One variable gadget: literal vertices x, x' and nx (the negation), the two
// auxiliary vertices y and z, and its seven edges.
struct GadgetIds {
  VertexId x = 0, xp = 0, nx = 0, y = 0, z = 0;
  EdgeId e_nx_z = 0; // (nx, z)  <1|k3>
  EdgeId e_z_x = 0;  // (z, x)   <1|k3>
  EdgeId e_x_xp = 0; // (x, x')  <1|k2>
  EdgeId e_r_xp = 0; // (r, x')  k3
  EdgeId e_r_y = 0;  // (r, y)   k4
  EdgeId e_y_z = 0;  // (y, z)   k4
  EdgeId e_y_nx = 0; // (y, nx)  <1|k2>

  std::array<EdgeId, 7> all_edges() const {
    return {e_nx_z, e_z_x, e_x_xp, e_r_xp, e_r_y, e_y_z, e_y_nx};
  }
  VertexId literal_vertex(Slot s) const {
    switch (s) {
      case Slot::FirstPositive: return x;
      case Slot::SecondPositive: return xp;
      default: return nx;
    }
  }
};

struct ClauseEdge {
  int variable = 0;
  Slot slot = Slot::FirstPositive;
  EdgeId edge = 0;

  bool literal_true(const Assignment& a) const {
    bool value = a.values[variable];
    return slot == Slot::Negative ? !value : value;
  }
};

struct ClauseInfo {
  VertexId vertex = 0;
  std::vector<ClauseEdge> lit_edges;   // clause literal order
  std::optional<EdgeId> root_edge;     // present iff the clause has two literals
};

struct ReductionMap {
  VertexId root = 0;
  std::vector<GadgetIds> vars;
  std::vector<ClauseInfo> clauses;
  KParams params;
};

// ---------------------------------------------------------------------------
// Construction

inline std::pair<WeightedGraph, ReductionMap> reduce(const TwoPOneNFormula& phi, int K) {
  KParams params = KParams::for_k(K);

  // Re-check the (2P1N) shape; the construction depends on it.
  RawCnf raw;
  raw.num_variables = phi.num_variables;
  for (const Clause& c : phi.clauses) {
    std::vector<int> lits;
    for (const Literal& l : c.literals)
      lits.push_back(l.positive ? l.variable + 1 : -(l.variable + 1));
    raw.clauses.push_back(std::move(lits));
  }
  auto violations = validate_2p1n(raw);
  if (!violations.empty())
    throw std::invalid_argument("not a valid (2P1N) formula: " + violations.front());

  WeightedGraph g;
  ReductionMap map;
  map.params = params;
  map.root = g.add_vertex("r");

  for (int i = 0; i < phi.num_variables; ++i) {
    std::string tag = std::to_string(i + 1);
    GadgetIds gadget;
    gadget.x = g.add_vertex("x" + tag);
    gadget.xp = g.add_vertex("x" + tag + "p");
    gadget.nx = g.add_vertex("nx" + tag);
    gadget.y = g.add_vertex("y" + tag);
    gadget.z = g.add_vertex("z" + tag);
    gadget.e_nx_z = g.add_edge(gadget.nx, gadget.z, EdgeWeight::dbl(1, params.k3));
    gadget.e_z_x = g.add_edge(gadget.z, gadget.x, EdgeWeight::dbl(1, params.k3));
    gadget.e_x_xp = g.add_edge(gadget.x, gadget.xp, EdgeWeight::dbl(1, params.k2));
    gadget.e_r_xp = g.add_edge(map.root, gadget.xp, EdgeWeight::single(params.k3));
    gadget.e_r_y = g.add_edge(map.root, gadget.y, EdgeWeight::single(params.k4));
    gadget.e_y_z = g.add_edge(gadget.y, gadget.z, EdgeWeight::single(params.k4));
    gadget.e_y_nx = g.add_edge(gadget.y, gadget.nx, EdgeWeight::dbl(1, params.k2));
    map.vars.push_back(gadget);
  }

  for (size_t ci = 0; ci < phi.clauses.size(); ++ci) {
    const Clause& c = phi.clauses[ci];
    ClauseInfo info;
    info.vertex = g.add_vertex("c" + std::to_string(ci + 1));
    for (const Literal& l : c.literals) {
      VertexId target = map.vars[l.variable].literal_vertex(l.slot);
      EdgeId e = g.add_edge(info.vertex, target, EdgeWeight::dbl(1, params.k2));
      info.lit_edges.push_back(ClauseEdge{l.variable, l.slot, e});
    }
    if (c.size() == 2)
      info.root_edge = g.add_edge(map.root, info.vertex, EdgeWeight::dbl(1, params.k1));
    map.clauses.push_back(std::move(info));
  }

  return {std::move(g), std::move(map)};
}

// ---------------------------------------------------------------------------
// Satisfying assignment -> low-congestion tree

// Picks, for each clause, the index (into lit_edges) of the literal whose
// clause-to-literal edge joins the tree. Must pick a literal that is true
// under the assignment.
using ClauseChooser = std::function<int(int clause_index, const ClauseInfo&, const Assignment&)>;

// Lowest variable index among the true literals; ties broken by slot order
// x, x', nx (they cannot arise within one clause).
inline ClauseChooser default_chooser() {
  return [](int, const ClauseInfo& info, const Assignment& a) {
    int best = -1;
    for (size_t i = 0; i < info.lit_edges.size(); ++i) {
      const ClauseEdge& ce = info.lit_edges[i];
      if (!ce.literal_true(a)) continue;
      if (best < 0 || ce.variable < info.lit_edges[best].variable ||
          (ce.variable == info.lit_edges[best].variable &&
           slot_rank(ce.slot) < slot_rank(info.lit_edges[best].slot)))
        best = static_cast<int>(i);
    }
    return best;
  };
}

inline SpanningTree assignment_to_tree(const WeightedGraph& g, const ReductionMap& map,
                                       const Assignment& a,
                                       const ClauseChooser& chooser = default_chooser()) {
  if (a.values.size() != map.vars.size())
    throw std::invalid_argument("assignment must cover every variable of the formula");
  for (const ClauseInfo& info : map.clauses) {
    bool satisfied = false;
    for (const ClauseEdge& ce : info.lit_edges) satisfied |= ce.literal_true(a);
    if (!satisfied)
      throw std::invalid_argument("assignment does not satisfy the formula");
  }

  std::vector<EdgeId> edges;
  for (size_t i = 0; i < map.vars.size(); ++i) {
    const GadgetIds& gadget = map.vars[i];
    edges.push_back(gadget.e_r_xp);
    edges.push_back(gadget.e_r_y);
    edges.push_back(gadget.e_y_z);
    if (a.values[i]) {
      edges.push_back(gadget.e_y_nx);
      edges.push_back(gadget.e_z_x);
    } else {
      edges.push_back(gadget.e_nx_z);
      edges.push_back(gadget.e_x_xp);
    }
  }
  for (size_t ci = 0; ci < map.clauses.size(); ++ci) {
    const ClauseInfo& info = map.clauses[ci];
    int pick = chooser(static_cast<int>(ci), info, a);
    if (pick < 0 || pick >= static_cast<int>(info.lit_edges.size()))
      throw std::invalid_argument("chooser returned no literal for clause " +
                                  std::to_string(ci + 1));
    if (!info.lit_edges[pick].literal_true(a))
      throw std::invalid_argument("chooser picked a false literal for clause " +
                                  std::to_string(ci + 1));
    edges.push_back(info.lit_edges[pick].edge);
  }

  SpanningTree t = SpanningTree::of(g, std::move(edges));
  validate_spanning_tree(g, t);
  return t;
}

// ---------------------------------------------------------------------------
// Low-congestion tree -> satisfying assignment

// Defined only for trees within the congestion budget K; the extraction rule
// reads x_i = 0 exactly when the clause-to-literal edge of nx_i is a tree
// edge.
inline Assignment tree_to_assignment(const WeightedGraph& g, const ReductionMap& map,
                                     const SpanningTree& t) {
  auto report = tree_congestion(g, t, false);
  if (report.max_congestion > map.params.K)
    throw std::invalid_argument("tree congestion " + std::to_string(report.max_congestion) +
                                " exceeds K=" + std::to_string(map.params.K) +
                                "; assignment extraction is undefined");
  Assignment a;
  a.values.assign(map.vars.size(), true);
  for (const ClauseInfo& info : map.clauses)
    for (const ClauseEdge& ce : info.lit_edges)
      if (ce.slot == Slot::Negative && t.contains(ce.edge)) a.values[ce.variable] = false;
  return a;
}

// ---------------------------------------------------------------------------
// Structural claims

struct ClaimResult {
  bool pass = true;
  std::string witness; // empty when the claim holds
};

struct ClaimReport {
  std::array<ClaimResult, 8> claims;

  const ClaimResult& claim(int i) const { return claims.at(i - 1); }
  bool all_pass() const {
    for (const ClaimResult& c : claims)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline std::vector<EdgeId> tree_path_edges(const WeightedGraph& g, const SpanningTree& t,
                                           VertexId from, VertexId to) {
  std::vector<VertexId> parent(g.vertex_count(), -1);
  std::vector<EdgeId> parent_edge(g.vertex_count(), -1);
  std::queue<VertexId> q;
  q.push(from);
  parent[from] = from;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop();
    if (v == to) break;
    for (const auto& [w, f] : g.neighbors(v)) {
      if (!t.contains(f) || parent[w] != -1) continue;
      parent[w] = v;
      parent_edge[w] = f;
      q.push(w);
    }
  }
  std::vector<EdgeId> path;
  for (VertexId v = to; v != from; v = parent[v]) path.push_back(parent_edge[v]);
  return path;
}

inline int tree_degree(const WeightedGraph& g, const SpanningTree& t, VertexId v) {
  int d = 0;
  for (const auto& [w, f] : g.neighbors(v)) {
    (void)w;
    if (t.contains(f)) ++d;
  }
  return d;
}

}  // namespace detail

// Checks the eight structural facts that every spanning tree within the
// congestion budget K must satisfy. All of them are verified for arbitrary
// valid spanning trees; failures carry a human-readable witness.
inline ClaimReport verify_claims(const WeightedGraph& g, const ReductionMap& map,
                                 const SpanningTree& t) {
  validate_spanning_tree(g, t);
  ClaimReport report;
  auto fail = [&](int claim, const std::string& witness) {
    if (report.claims[claim - 1].pass)
      report.claims[claim - 1] = ClaimResult{false, witness};
  };

  // Claim 1: every tree edge on an r-to-literal path has at least two
  // distinct edges of that literal's gadget, other than (y,z), in its
  // cross-edge set.
  for (size_t i = 0; i < map.vars.size(); ++i) {
    const GadgetIds& gadget = map.vars[i];
    std::vector<EdgeId> counted(gadget.all_edges().begin(), gadget.all_edges().end());
    counted.erase(std::find(counted.begin(), counted.end(), gadget.e_y_z));
    for (VertexId lit : {gadget.x, gadget.xp, gadget.nx}) {
      for (EdgeId e : detail::tree_path_edges(g, t, map.root, lit)) {
        auto cross = cross_edge_set(g, t, e);
        int hits = 0;
        for (EdgeId f : counted)
          if (std::binary_search(cross.begin(), cross.end(), f)) ++hits;
        if (hits < 2)
          fail(1, "edge " + std::to_string(e) + " on the r-to-" + g.vertex_name(lit) +
                      " path crosses only " + std::to_string(hits) +
                      " gadget edges of x" + std::to_string(i + 1));
      }
    }
  }

  // Claim 2: no root-to-clause edge is a tree edge.
  for (size_t ci = 0; ci < map.clauses.size(); ++ci)
    if (map.clauses[ci].root_edge && t.contains(*map.clauses[ci].root_edge))
      fail(2, "root edge of clause " + std::to_string(ci + 1) + " is in the tree");

  // Claim 3: clause vertices are leaves.
  for (size_t ci = 0; ci < map.clauses.size(); ++ci) {
    int d = detail::tree_degree(g, t, map.clauses[ci].vertex);
    if (d != 1)
      fail(3, "clause vertex c" + std::to_string(ci + 1) + " has tree degree " +
                  std::to_string(d));
  }

  // Claims 4, 5, 7: per-gadget mandatory edges; Claim 6: exactly one of
  // (z,x), (x,x').
  for (size_t i = 0; i < map.vars.size(); ++i) {
    const GadgetIds& gadget = map.vars[i];
    std::string var = "x" + std::to_string(i + 1);
    if (!t.contains(gadget.e_r_xp)) fail(4, "(r," + var + "p) missing from the tree");
    if (!t.contains(gadget.e_r_y)) fail(5, "(r,y" + std::to_string(i + 1) + ") missing");
    int picked = (t.contains(gadget.e_z_x) ? 1 : 0) + (t.contains(gadget.e_x_xp) ? 1 : 0);
    if (picked != 1)
      fail(6, var + "-gadget has " + std::to_string(picked) +
                  " of (z,x),(x,x') in the tree (want exactly 1)");
    if (!t.contains(gadget.e_y_z)) fail(7, "(y" + std::to_string(i + 1) + ",z" +
                                                std::to_string(i + 1) + ") missing");
  }

  // Claim 8: a tree edge to nx_i excludes tree edges to x_i and x'_i.
  std::vector<char> neg_in_tree(map.vars.size(), 0), pos_in_tree(map.vars.size(), 0);
  std::vector<std::string> pos_witness(map.vars.size());
  for (size_t ci = 0; ci < map.clauses.size(); ++ci) {
    for (const ClauseEdge& ce : map.clauses[ci].lit_edges) {
      if (!t.contains(ce.edge)) continue;
      if (ce.slot == Slot::Negative) {
        neg_in_tree[ce.variable] = 1;
      } else {
        pos_in_tree[ce.variable] = 1;
        pos_witness[ce.variable] = "clause " + std::to_string(ci + 1);
      }
    }
  }
  for (size_t i = 0; i < map.vars.size(); ++i)
    if (neg_in_tree[i] && pos_in_tree[i])
      fail(8, "x" + std::to_string(i + 1) + " has both its negative and a positive "
                  "clause-to-literal edge in the tree (" + pos_witness[i] + ")");

  return report;
}

// ---------------------------------------------------------------------------
// Round trip

struct RoundtripVerdict {
  int K = 5;
  bool satisfiable = false;
  Decision stc_decision = Decision::No;
  bool inconclusive = false; // solver timed out; equivalence undetermined
  bool consistent = false;
  std::optional<long long> forward_congestion; // assignment_to_tree, when sat
  std::optional<bool> extraction_satisfies;    // tree_to_assignment on certificate
  std::optional<bool> claims_pass;             // verify_claims on certificate
};

// Runs the SAT oracle and the STC decision on the reduced graph, then checks
// that the two outcomes agree, that a satisfying assignment produces a tree
// within budget and that the solver certificate extracts back to a
// satisfying assignment.
inline RoundtripVerdict roundtrip_check(const TwoPOneNFormula& phi, int K,
                                        const SolveConfig& cfg = {}) {
  auto [g, map] = reduce(phi, K);
  RoundtripVerdict verdict;
  verdict.K = K;

  auto model = solve_sat(phi);
  verdict.satisfiable = model.has_value();

  SolveResult stc = is_stc_at_most(g, K, cfg);
  verdict.stc_decision = stc.decision;
  if (stc.decision == Decision::Timeout) {
    verdict.inconclusive = true;
    return verdict;
  }

  bool agree = verdict.satisfiable == (stc.decision == Decision::Yes);
  bool extras_ok = true;
  if (model) {
    SpanningTree forward = assignment_to_tree(g, map, *model);
    verdict.forward_congestion = tree_congestion(g, forward, false).max_congestion;
    extras_ok &= *verdict.forward_congestion <= K;
  }
  if (stc.decision == Decision::Yes) {
    Assignment extracted = tree_to_assignment(g, map, *stc.certificate);
    verdict.extraction_satisfies = evaluate(phi, extracted);
    verdict.claims_pass = verify_claims(g, map, *stc.certificate).all_pass();
    extras_ok &= *verdict.extraction_satisfies && *verdict.claims_pass;
  }
  verdict.consistent = agree && extras_ok;
  return verdict;
}

// ---------------------------------------------------------------------------
// JSON forms

inline json map_to_json(const ReductionMap& map) {
  json vars = json::array();
  for (const GadgetIds& g : map.vars)
    vars.push_back(json{{"x", g.x}, {"xp", g.xp}, {"nx", g.nx}, {"y", g.y}, {"z", g.z}});
  json clauses = json::array();
  for (const ClauseInfo& info : map.clauses) {
    json lit_edges = json::array();
    for (const ClauseEdge& ce : info.lit_edges) lit_edges.push_back(ce.edge);
    json jc{{"vertex", info.vertex}, {"lit_edges", std::move(lit_edges)}};
    if (info.root_edge) jc["root_edge"] = *info.root_edge;
    clauses.push_back(std::move(jc));
  }
  return json{{"K", map.params.K},
              {"clauses", std::move(clauses)},
              {"root", map.root},
              {"vars", std::move(vars)}};
}

// Rebuilds a full reduction map against its graph; gadget edge ids and
// clause-edge slots are recovered from the graph structure.
inline ReductionMap map_from_json(const WeightedGraph& g, const json& j) {
  if (!j.is_object() || !j.contains("root") || !j.contains("vars") ||
      !j.contains("clauses") || !j.contains("K"))
    throw ParseError("reduction map JSON needs 'root', 'vars', 'clauses' and 'K'");
  ReductionMap map;
  map.params = KParams::for_k(j.at("K").get<int>());
  map.root = j.at("root").get<VertexId>();

  auto need_edge = [&](VertexId u, VertexId v, const char* what) {
    auto e = g.find_edge(u, v);
    if (!e) throw ParseError(std::string("reduction map: missing ") + what + " edge");
    return *e;
  };
  for (const json& jv : j.at("vars")) {
    GadgetIds gadget;
    gadget.x = jv.at("x").get<VertexId>();
    gadget.xp = jv.at("xp").get<VertexId>();
    gadget.nx = jv.at("nx").get<VertexId>();
    gadget.y = jv.at("y").get<VertexId>();
    gadget.z = jv.at("z").get<VertexId>();
    gadget.e_nx_z = need_edge(gadget.nx, gadget.z, "(nx,z)");
    gadget.e_z_x = need_edge(gadget.z, gadget.x, "(z,x)");
    gadget.e_x_xp = need_edge(gadget.x, gadget.xp, "(x,x')");
    gadget.e_r_xp = need_edge(map.root, gadget.xp, "(r,x')");
    gadget.e_r_y = need_edge(map.root, gadget.y, "(r,y)");
    gadget.e_y_z = need_edge(gadget.y, gadget.z, "(y,z)");
    gadget.e_y_nx = need_edge(gadget.y, gadget.nx, "(y,nx)");
    map.vars.push_back(gadget);
  }
  for (const json& jc : j.at("clauses")) {
    ClauseInfo info;
    info.vertex = jc.at("vertex").get<VertexId>();
    for (const json& je : jc.at("lit_edges")) {
      ClauseEdge ce;
      ce.edge = je.get<EdgeId>();
      VertexId target = g.edge(ce.edge).other(info.vertex);
      bool resolved = false;
      for (size_t i = 0; i < map.vars.size() && !resolved; ++i) {
        const GadgetIds& gadget = map.vars[i];
        for (Slot s : {Slot::FirstPositive, Slot::SecondPositive, Slot::Negative}) {
          if (gadget.literal_vertex(s) == target) {
            ce.variable = static_cast<int>(i);
            ce.slot = s;
            resolved = true;
            break;
          }
        }
      }
      if (!resolved)
        throw ParseError("clause-to-literal edge " + std::to_string(ce.edge) +
                         " does not reach a literal vertex");
      info.lit_edges.push_back(ce);
    }
    if (jc.contains("root_edge")) info.root_edge = jc.at("root_edge").get<EdgeId>();
    map.clauses.push_back(std::move(info));
  }
  return map;
}

inline json claim_report_to_json(const ClaimReport& report) {
  json claims = json::object();
  for (int i = 1; i <= 8; ++i) {
    json jc{{"pass", report.claim(i).pass}};
    if (!report.claim(i).pass) jc["witness"] = report.claim(i).witness;
    claims[std::to_string(i)] = std::move(jc);
  }
  return json{{"all_pass", report.all_pass()}, {"claims", std::move(claims)}};
}

inline json roundtrip_to_json(const RoundtripVerdict& v) {
  json out{{"K", v.K},
           {"sat", v.satisfiable},
           {"stc_decision", to_string(v.stc_decision)}};
  if (v.inconclusive) {
    out["inconclusive"] = true;
  } else {
    out["consistent"] = v.consistent;
    if (v.forward_congestion) out["forward_congestion"] = *v.forward_congestion;
    if (v.extraction_satisfies) out["extraction_satisfies"] = *v.extraction_satisfies;
    if (v.claims_pass) out["claims_pass"] = *v.claims_pass;
  }
  return out;
}

}  // namespace stclab
