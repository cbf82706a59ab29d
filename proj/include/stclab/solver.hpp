#pragma once

#include <chrono>
#include <climits>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "stclab/congestion.hpp"
#include "stclab/errors.hpp"
#include "stclab/graph.hpp"

namespace stclab {

enum class Decision { Yes, No, Timeout };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    default: return "timeout";
  }
}

struct SolveConfig {
  std::optional<int> k;                         // decision bound; absent = optimize
  std::chrono::milliseconds timeout{600000};
  bool deterministic = false;
  std::optional<long long> max_trees;           // cap for the naive oracle
};

struct SolveResult {
  Decision decision = Decision::No;
  std::optional<long long> optimum;
  std::optional<SpanningTree> certificate;
  long long trees_explored = 0;
  std::chrono::milliseconds elapsed{0};
};

using TreeVisitor = std::function<bool(const std::vector<EdgeId>&)>;

namespace detail {

// Contraction/deletion enumeration: edges are decided in id order; a branch
// is cut when the chosen edge would close a cycle (forced out) or when its
// exclusion disconnects what remains. Every leaf is a distinct spanning tree.
class TreeEnumerator {
 public:
  TreeEnumerator(const WeightedGraph& g, const TreeVisitor& visit)
      : g_(g), n_(g.vertex_count()), m_(g.edge_count()), visit_(visit), in_mask_(m_, 0) {}

  long long run() {
    if (!g_.is_connected()) throw InvalidGraphError("graph is not connected");
    in_edges_.reserve(n_ > 0 ? n_ - 1 : 0);
    DisjointSet dsu(n_);
    step(0, dsu);
    return count_;
  }

 private:
  void step(EdgeId idx, DisjointSet& dsu) {
    if (stopped_) return;
    if (static_cast<int>(in_edges_.size()) == n_ - 1) {
      ++count_;
      if (!visit_(in_edges_)) stopped_ = true;
      return;
    }
    if (idx >= m_) return;

    const Edge& e = g_.edge(idx);
    if (dsu.find(e.u) == dsu.find(e.v)) {
      step(idx + 1, dsu); // would close a cycle: excluded, no branch
      return;
    }
    DisjointSet with = dsu;
    with.unite(e.u, e.v);
    in_edges_.push_back(idx);
    in_mask_[idx] = 1;
    step(idx + 1, with);
    in_edges_.pop_back();
    in_mask_[idx] = 0;
    if (!stopped_ && connected_without(idx)) step(idx + 1, dsu);
  }

  // Connectivity of the graph restricted to committed edges plus edges > idx.
  bool connected_without(EdgeId idx) const {
    std::vector<char> seen(n_, 0);
    std::queue<VertexId> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (const auto& [w, f] : g_.neighbors(v)) {
        if (seen[w] || (f <= idx && !in_mask_[f])) continue;
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
    }
    return reached == n_;
  }

  const WeightedGraph& g_;
  int n_, m_;
  const TreeVisitor& visit_;
  std::vector<char> in_mask_;
  std::vector<EdgeId> in_edges_;
  long long count_ = 0;
  bool stopped_ = false;
};

// Branch-and-bound over edge in/out decisions. For a committed edge e, the
// committed forest already determines part of its final congestion: removing
// e splits e's component into sides A and B, and every graph edge with one
// endpoint in A and the other in B crosses e in every completion. Moreover
// each other forest component lands entirely on one side of that cut (its
// committed edges keep it connected in the final tree minus e), so it
// contributes at least the lighter of its edge weights towards A and towards
// B. The sum is an admissible lower bound; a branch is cut only when some
// committed edge is provably over the budget, and a component whose cheaper
// side already busts the budget is forced to the other side by excluding the
// undecided edges that would pull it across. Unit propagation: edges closing
// a forest cycle are forced out, bridges of the not-yet-excluded graph are
// forced in. The search is sequential with a fixed branch order (components
// first, then edge id), hence deterministic.
class StcSearch {
 public:
  StcSearch(const WeightedGraph& g, std::chrono::milliseconds timeout)
      : g_(g),
        n_(g.vertex_count()),
        m_(g.edge_count()),
        state_(m_, UND),
        deadline_(Clock::now() + timeout) {}

  SolveResult decide(long long k) {
    start_ = Clock::now();
    limit_ = k;
    optimizing_ = false;
    seed_with_bfs_tree();
    if (!best_tree_ || best_cong_ > k) {
      best_tree_.reset();
      search();
    }
    return finish(/*found=*/best_tree_.has_value());
  }

  SolveResult optimize() {
    start_ = Clock::now();
    optimizing_ = true;
    seed_with_bfs_tree();
    limit_ = best_cong_ - 1;
    search();
    return finish(true);
  }

 private:
  using Clock = std::chrono::steady_clock;
  static constexpr char UND = 0, IN = 1, OUT = 2;

  // Seeds the incumbent with a BFS tree improved by greedy edge swaps:
  // repeatedly replace the most congested tree edge with a crossing non-tree
  // edge when that strictly lowers (max congestion, number of edges at the
  // max). Deterministic and purely an upper bound; the exact search below
  // is unaffected by where the incumbent came from.
  void seed_with_bfs_tree() {
    std::vector<EdgeId> tree;
    std::vector<char> seen(n_, 0);
    std::queue<VertexId> q;
    if (n_ > 0) {
      q.push(0);
      seen[0] = 1;
    }
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (const auto& [w, f] : g_.neighbors(v)) {
        if (seen[w]) continue;
        seen[w] = 1;
        tree.push_back(f);
        q.push(w);
      }
    }
    std::sort(tree.begin(), tree.end());

    auto grade = [&](const std::vector<EdgeId>& t) {
      auto report = tree_congestion(g_, SpanningTree{&g_, t}, false);
      long long at_max = 0;
      for (const auto& [e, c] : report.per_edge) at_max += c == report.max_congestion;
      return std::pair<long long, long long>(report.max_congestion, at_max);
    };
    auto score = grade(tree);
    for (int round = 0; round < 4 * m_ && Clock::now() < deadline_; ++round) {
      if (!optimizing_ && score.first <= limit_) break; // good enough to decide
      auto report = tree_congestion(g_, SpanningTree{&g_, tree}, true);
      EdgeId worst = -1;
      for (const auto& [e, c] : report.per_edge)
        if (c == report.max_congestion && worst < 0) worst = e;
      std::vector<EdgeId> best_candidate;
      auto best_score = score;
      for (EdgeId f : report.witnesses.at(worst)) {
        if (f == worst) continue;
        std::vector<EdgeId> candidate = tree;
        candidate.erase(std::find(candidate.begin(), candidate.end(), worst));
        candidate.insert(std::lower_bound(candidate.begin(), candidate.end(), f), f);
        auto s = grade(candidate);
        if (s < best_score) {
          best_score = s;
          best_candidate = std::move(candidate);
        }
      }
      if (best_candidate.empty()) break;
      tree = std::move(best_candidate);
      score = best_score;
    }

    trees_ = 1;
    best_cong_ = score.first;
    best_tree_ = std::move(tree);
  }

  bool halted() const { return stop_ || timed_out_; }

  void set_state(EdgeId e, char s) {
    trail_.emplace_back(e, state_[e]);
    if (state_[e] == IN) --in_count_;
    state_[e] = s;
    if (s == IN) ++in_count_;
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      auto [e, old] = trail_.back();
      trail_.pop_back();
      if (state_[e] == IN) --in_count_;
      state_[e] = old;
      if (old == IN) ++in_count_;
    }
  }

  void search() {
    if (halted()) return;
    if ((++tick_ & 0xff) == 0 && Clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    size_t mark = trail_.size();
    if (propagate()) {
      if (in_count_ == n_ - 1) {
        leaf();
      } else {
        EdgeId b = pick_branch_edge();
        if (b >= 0) {
          size_t inner = trail_.size();
          set_state(b, IN);
          search();
          undo_to(inner);
          if (!halted()) {
            set_state(b, OUT);
            search();
            undo_to(inner);
          }
        }
      }
    }
    undo_to(mark);
  }

  // Forces cycle-closing edges out and bridges in, checks the congestion
  // lower bounds (which may force further exclusions), and repeats until
  // fixpoint. False when the node is dead.
  bool propagate() {
    for (;;) {
      DisjointSet dsu(n_);
      for (EdgeId e = 0; e < m_; ++e)
        if (state_[e] == IN) dsu.unite(g_.edge(e).u, g_.edge(e).v);

      bool changed = false;
      for (EdgeId e = 0; e < m_; ++e) {
        if (state_[e] != UND) continue;
        if (dsu.find(g_.edge(e).u) == dsu.find(g_.edge(e).v)) {
          set_state(e, OUT);
          changed = true;
        }
      }
      if (!alive_connected()) return false;
      for (EdgeId e : alive_bridges()) {
        if (state_[e] == UND) {
          set_state(e, IN);
          changed = true;
        }
      }
      if (changed) continue;

      build_forest();
      if (!check_bounds(changed)) return false;
      if (!changed) return true;
    }
  }

  bool alive_connected() const {
    std::vector<char> seen(n_, 0);
    std::queue<VertexId> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (const auto& [w, f] : g_.neighbors(v)) {
        if (seen[w] || state_[f] == OUT) continue;
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
    }
    return reached == n_;
  }

  std::vector<EdgeId> alive_bridges() const {
    std::vector<EdgeId> bridges;
    std::vector<int> disc(n_, -1), low(n_, 0);
    int timer = 0;
    auto dfs = [&](auto&& self, VertexId v, EdgeId via) -> void {
      disc[v] = low[v] = timer++;
      for (const auto& [w, f] : g_.neighbors(v)) {
        if (state_[f] == OUT || f == via) continue;
        if (disc[w] == -1) {
          self(self, w, f);
          low[v] = std::min(low[v], low[w]);
          if (low[w] > disc[v]) bridges.push_back(f);
        } else {
          low[v] = std::min(low[v], disc[w]);
        }
      }
    };
    for (VertexId v = 0; v < n_; ++v)
      if (disc[v] == -1) dfs(dfs, v, -1);
    return bridges;
  }

  // Roots every component of the committed forest, recording component ids
  // and preorder in/out times for subtree tests.
  void build_forest() {
    comp_.assign(n_, -1);
    parent_edge_.assign(n_, -1);
    tin_.assign(n_, 0);
    tout_.assign(n_, 0);
    comp_count_ = 0;
    int timer = 0;
    std::vector<std::pair<VertexId, size_t>> stack;
    for (VertexId r = 0; r < n_; ++r) {
      if (comp_[r] != -1) continue;
      comp_[r] = comp_count_;
      stack.emplace_back(r, 0);
      tin_[r] = timer++;
      while (!stack.empty()) {
        auto& [v, next] = stack.back();
        const auto& nbrs = g_.neighbors(v);
        bool descended = false;
        while (next < nbrs.size()) {
          auto [w, f] = nbrs[next++];
          if (state_[f] != IN || comp_[w] != -1) continue;
          comp_[w] = comp_count_;
          parent_edge_[w] = f;
          tin_[w] = timer++;
          stack.emplace_back(w, 0);
          descended = true;
          break;
        }
        if (!descended && !stack.empty() && stack.back().first == v) {
          tout_[v] = timer;
          stack.pop_back();
        }
      }
      ++comp_count_;
    }
  }

  bool in_subtree(VertexId root, VertexId v) const {
    return tin_[root] <= tin_[v] && tin_[v] < tout_[root];
  }

  // Certain congestion of every committed edge. Classifies each vertex
  // against the A/B split of the edge's component; other components add the
  // lighter of their two side weights, and a component whose cheaper side
  // already exceeds the budget is forced off the expensive one (excluding
  // the undecided edges towards it). At a complete tree the bound is the
  // exact congestion. Returns false when a committed edge is over budget.
  bool check_bounds(bool& changed) {
    cong_.assign(m_, 0);
    side_a_.assign(comp_count_, 0);
    side_b_.assign(comp_count_, 0);

    for (EdgeId e = 0; e < m_; ++e) {
      if (state_[e] != IN) continue;
      const Edge& ed = g_.edge(e);
      VertexId child = parent_edge_[ed.u] == e ? ed.u : ed.v; // deeper endpoint
      int q = comp_[child];
      // side of x relative to the cut at e: B = subtree under child
      auto b_side = [&](VertexId x) { return in_subtree(child, x); };

      long long total = ed.weight.own;
      std::fill(side_a_.begin(), side_a_.end(), 0);
      std::fill(side_b_.begin(), side_b_.end(), 0);
      for (EdgeId f = 0; f < m_; ++f) {
        if (state_[f] == IN) continue;
        const Edge& fe = g_.edge(f);
        int cu = comp_[fe.u], cv = comp_[fe.v];
        if (cu == q && cv == q) {
          if (b_side(fe.u) != b_side(fe.v)) total += fe.weight.outside;
        } else if (cu == q || cv == q) {
          VertexId inside = cu == q ? fe.u : fe.v;
          int other = cu == q ? cv : cu;
          (b_side(inside) ? side_b_[other] : side_a_[other]) += fe.weight.outside;
        }
      }
      for (int c = 0; c < comp_count_; ++c) {
        if (c == q) continue;
        total += std::min(side_a_[c], side_b_[c]);
      }
      cong_[e] = total;
      if (total > limit_) return false;

      // Component forcing: landing on side S costs total - min + w(S); when
      // that provably busts the budget, the undecided edges from the
      // component to S cannot be tree edges.
      for (int c = 0; c < comp_count_; ++c) {
        if (c == q) continue;
        long long base = total - std::min(side_a_[c], side_b_[c]);
        bool forbid_b = base + side_a_[c] > limit_; // landing B crosses the A-side edges
        bool forbid_a = base + side_b_[c] > limit_;
        if (!forbid_a && !forbid_b) continue;
        for (EdgeId f = 0; f < m_; ++f) {
          if (state_[f] != UND) continue;
          const Edge& fe = g_.edge(f);
          int cu = comp_[fe.u], cv = comp_[fe.v];
          if (cu != c && cv != c) continue;
          VertexId anchor = cu == c ? fe.v : fe.u;
          if (comp_[anchor] != q) continue;
          bool towards_b = b_side(anchor);
          if ((towards_b && forbid_b) || (!towards_b && forbid_a)) {
            set_state(f, OUT);
            changed = true;
          }
        }
      }
      if (changed) return true; // forest changed meaning; re-run propagation
    }
    return true;
  }

  // Lowest-id undecided edge incident to a component that already holds a
  // committed edge; lowest-id undecided edge when there is none.
  EdgeId pick_branch_edge() const {
    EdgeId fallback = -1;
    for (EdgeId e = 0; e < m_; ++e) {
      if (state_[e] != UND) continue;
      if (fallback < 0) fallback = e;
      const Edge& ed = g_.edge(e);
      if (component_nontrivial(ed.u) || component_nontrivial(ed.v)) return e;
    }
    return fallback;
  }

  bool component_nontrivial(VertexId v) const {
    // v's component holds a committed edge iff v has a parent or a child in
    // the forest; roots of singleton components have neither.
    if (parent_edge_[v] != -1) return true;
    for (const auto& [w, f] : g_.neighbors(v)) {
      (void)w;
      if (state_[f] == IN) return true;
    }
    return false;
  }

  void leaf() {
    ++trees_;
    long long c = 0;
    std::vector<EdgeId> tree;
    tree.reserve(n_ - 1);
    for (EdgeId e = 0; e < m_; ++e) {
      if (state_[e] != IN) continue;
      tree.push_back(e);
      c = std::max(c, cong_[e]); // exact at a complete tree
    }
    best_cong_ = c;
    best_tree_ = std::move(tree);
    if (optimizing_)
      limit_ = c - 1;
    else
      stop_ = true;
  }

  SolveResult finish(bool found) {
    SolveResult r;
    r.trees_explored = trees_;
    r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_);
    if (timed_out_) {
      r.decision = Decision::Timeout;
      if (optimizing_ && best_tree_) { // partial: best seen so far
        r.optimum = best_cong_;
        r.certificate = SpanningTree::of(g_, *best_tree_);
      }
      return r;
    }
    if (!found) {
      r.decision = Decision::No;
      return r;
    }
    r.decision = Decision::Yes;
    r.certificate = SpanningTree::of(g_, *best_tree_);
    if (optimizing_) r.optimum = best_cong_;
    return r;
  }

  const WeightedGraph& g_;
  int n_, m_;
  std::vector<char> state_;
  int in_count_ = 0;
  long long limit_ = 0;
  bool optimizing_ = false;
  std::vector<std::pair<EdgeId, char>> trail_;
  long long trees_ = 0;
  unsigned tick_ = 0;
  Clock::time_point start_, deadline_;
  bool timed_out_ = false;
  bool stop_ = false;
  std::optional<std::vector<EdgeId>> best_tree_;
  long long best_cong_ = LLONG_MAX;

  std::vector<int> comp_, tin_, tout_;
  int comp_count_ = 0;
  std::vector<EdgeId> parent_edge_;
  std::vector<long long> cong_, side_a_, side_b_;
};

}  // namespace detail

// Visits every spanning tree of g exactly once, in a fixed deterministic
// order; stops early when the visitor returns false. Returns the number of
// trees visited.
inline long long enumerate_spanning_trees(const WeightedGraph& g, const TreeVisitor& visit) {
  return detail::TreeEnumerator(g, visit).run();
}

inline SolveResult is_stc_at_most(const WeightedGraph& g, int k, const SolveConfig& cfg = {}) {
  if (k < 1) throw std::invalid_argument("congestion bound K must be positive");
  if (!g.is_connected()) throw InvalidGraphError("graph is not connected");
  return detail::StcSearch(g, cfg.timeout).decide(k);
}

inline SolveResult stc_exact(const WeightedGraph& g, const SolveConfig& cfg = {}) {
  if (!g.is_connected()) throw InvalidGraphError("graph is not connected");
  return detail::StcSearch(g, cfg.timeout).optimize();
}

// Unpruned reference: enumerates every spanning tree and takes the best
// congestion. Exists to cross-validate the pruned search; refuses graphs
// whose tree count exceeds the cap.
inline long long stc_naive(const WeightedGraph& g, long long max_trees = 2000000) {
  long long best = LLONG_MAX;
  long long seen = 0;
  enumerate_spanning_trees(g, [&](const std::vector<EdgeId>& edges) {
    if (++seen > max_trees) return false;
    auto report = tree_congestion(g, SpanningTree::of(g, edges), false);
    best = std::min(best, report.max_congestion);
    return true;
  });
  if (seen > max_trees)
    throw std::runtime_error("refusing naive enumeration: spanning tree count exceeds cap");
  return best;
}

}  // namespace stclab
