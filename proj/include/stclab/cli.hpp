#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stclab/cnf.hpp"
#include "stclab/congestion.hpp"
#include "stclab/corpus.hpp"
#include "stclab/errors.hpp"
#include "stclab/graph.hpp"
#include "stclab/reduction.hpp"
#include "stclab/serialize.hpp"
#include "stclab/solver.hpp"
#include "stclab/transform.hpp"

namespace stclab::cli {

// Exit codes shared with the shell-level test harnesses.
inline constexpr int kOk = 0;           // success / consistent
inline constexpr int kInconsistent = 1; // reduction equivalence violated
inline constexpr int kUsage = 2;        // usage or input parse errors
inline constexpr int kInconclusive = 3; // timeout

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << text;
}

// Canonical JSON artifact: key-sorted, no whitespace, newline-terminated.
inline void emit_json(const std::optional<std::string>& out_path, const json& j) {
  std::string text = canonical_dump(j) + "\n";
  if (out_path)
    write_text(*out_path, text);
  else
    std::cout << text;
}

inline void emit_text(const std::optional<std::string>& out_path, const std::string& text) {
  if (out_path)
    write_text(*out_path, text);
  else
    std::cout << text;
}

inline json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

inline WeightedGraph load_graph(const std::string& path) {
  return graph_from_json(parse_json_file(path));
}

}  // namespace detail

inline int run(const std::vector<std::string>& args) {
  CLI::App app{"spanning tree congestion laboratory"};
  app.require_subcommand(1);

  std::string cnf_path, graph_path, map_path, tree_path, out_path;
  int k = 0;
  long long timeout_ms = 600000;
  bool deterministic = false;
  uint64_t seed = 0;
  int gen_vars = 3, gen_count = 10;
  std::string format = "json";

  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "output path"); };

  CLI::App* c_reduce = app.add_subcommand("reduce", "build the K-STC instance of a (2P1N) formula");
  c_reduce->add_option("--cnf", cnf_path, "DIMACS input")->required();
  c_reduce->add_option("--k", k, "congestion budget K (>= 5)")->required();
  c_reduce->add_option("--map", map_path, "where to write the reduction map JSON");
  add_out(c_reduce);

  CLI::App* c_decide = app.add_subcommand("stc-decide", "decide whether stc(G) <= K");
  c_decide->add_option("--graph", graph_path, "graph JSON")->required();
  c_decide->add_option("--k", k, "congestion bound K")->required();
  c_decide->add_option("--timeout-ms", timeout_ms, "search budget");
  c_decide->add_flag("--deterministic", deterministic, "stable artifacts");
  add_out(c_decide);

  CLI::App* c_exact = app.add_subcommand("stc-exact", "compute stc(G) exactly");
  c_exact->add_option("--graph", graph_path, "graph JSON")->required();
  c_exact->add_option("--timeout-ms", timeout_ms, "search budget");
  c_exact->add_flag("--deterministic", deterministic, "stable artifacts");
  add_out(c_exact);

  CLI::App* c_sat = app.add_subcommand("sat-solve", "solve a (2P1N) formula exhaustively");
  c_sat->add_option("--cnf", cnf_path, "DIMACS input")->required();
  add_out(c_sat);

  CLI::App* c_round = app.add_subcommand("roundtrip", "check SAT <=> (stc <= K) on the reduction");
  c_round->add_option("--cnf", cnf_path, "DIMACS input")->required();
  c_round->add_option("--k", k, "congestion budget K (>= 5)")->required();
  c_round->add_option("--timeout-ms", timeout_ms, "search budget");
  c_round->add_flag("--deterministic", deterministic, "stable artifacts");
  add_out(c_round);

  CLI::App* c_verify = app.add_subcommand("verify-tree", "congestion report for a spanning tree");
  c_verify->add_option("--graph", graph_path, "graph JSON")->required();
  c_verify->add_option("--tree", tree_path, "tree JSON")->required();
  c_verify->add_option("--k", k, "optional budget to compare against");
  add_out(c_verify);

  CLI::App* c_claims = app.add_subcommand("claims", "check the structural claims for a tree");
  c_claims->add_option("--graph", graph_path, "graph JSON")->required();
  c_claims->add_option("--map", map_path, "reduction map JSON")->required();
  c_claims->add_option("--tree", tree_path, "tree JSON")->required();
  add_out(c_claims);

  CLI::App* c_dot = app.add_subcommand("export-dot", "render a graph (optionally with a tree)");
  c_dot->add_option("--graph", graph_path, "graph JSON")->required();
  c_dot->add_option("--tree", tree_path, "tree JSON");
  c_dot->add_option("--format", format, "json|dot")->check(CLI::IsMember({"json", "dot"}));
  add_out(c_dot);

  CLI::App* c_gen = app.add_subcommand("gen-corpus", "generate random valid (2P1N) instances");
  c_gen->add_option("--seed", seed, "RNG seed")->required();
  c_gen->add_option("--vars", gen_vars, "variables per instance (>= 2)");
  c_gen->add_option("--count", gen_count, "number of instances");
  c_gen->add_option("--out", out_path, "output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e); // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  std::optional<std::string> out =
      out_path.empty() ? std::nullopt : std::make_optional(out_path);
  SolveConfig cfg;
  cfg.timeout = std::chrono::milliseconds(timeout_ms);
  cfg.deterministic = deterministic;

  try {
    if (c_reduce->parsed()) {
      auto phi = parse_dimacs(detail::read_file(cnf_path));
      auto [g, map] = reduce(phi, k);
      detail::emit_json(out, graph_to_json(g));
      if (!map_path.empty())
        detail::write_text(map_path, canonical_dump(map_to_json(map)) + "\n");
      return kOk;
    }

    if (c_decide->parsed() || c_exact->parsed()) {
      WeightedGraph g = detail::load_graph(graph_path);
      SolveResult r = c_decide->parsed() ? is_stc_at_most(g, k, cfg) : stc_exact(g, cfg);
      if (deterministic) r.elapsed = std::chrono::milliseconds(0);
      json j{{"decision", to_string(r.decision)},
             {"elapsed_ms", r.elapsed.count()},
             {"trees_explored", r.trees_explored}};
      if (r.optimum) j["optimum"] = *r.optimum;
      if (r.certificate) j["certificate"] = tree_to_json(g, *r.certificate);
      detail::emit_json(out, j);
      return r.decision == Decision::Timeout ? kInconclusive : kOk;
    }

    if (c_sat->parsed()) {
      auto phi = parse_dimacs(detail::read_file(cnf_path));
      auto model = solve_sat(phi);
      json j{{"sat", model.has_value()}};
      if (model) j["assignment"] = assignment_to_json(*model);
      detail::emit_json(out, j);
      return kOk;
    }

    if (c_round->parsed()) {
      auto phi = parse_dimacs(detail::read_file(cnf_path));
      RoundtripVerdict v = roundtrip_check(phi, k, cfg);
      detail::emit_json(out, roundtrip_to_json(v));
      if (v.inconclusive) return kInconclusive;
      return v.consistent ? kOk : kInconsistent;
    }

    if (c_verify->parsed()) {
      WeightedGraph g = detail::load_graph(graph_path);
      SpanningTree t = tree_from_json(g, detail::parse_json_file(tree_path));
      CongestionReport report = tree_congestion(g, t);
      json j = congestion_report_to_json(report);
      if (c_verify->count("--k") > 0) {
        j["k"] = k;
        j["within_k"] = report.max_congestion <= k;
      }
      detail::emit_json(out, j);
      return kOk;
    }

    if (c_claims->parsed()) {
      WeightedGraph g = detail::load_graph(graph_path);
      ReductionMap map = map_from_json(g, detail::parse_json_file(map_path));
      SpanningTree t = tree_from_json(g, detail::parse_json_file(tree_path));
      detail::emit_json(out, claim_report_to_json(verify_claims(g, map, t)));
      return kOk;
    }

    if (c_dot->parsed()) {
      WeightedGraph g = detail::load_graph(graph_path);
      std::optional<SpanningTree> t;
      if (!tree_path.empty()) t = tree_from_json(g, detail::parse_json_file(tree_path));
      if (format == "dot")
        detail::emit_text(out, to_dot(g, t ? &*t : nullptr));
      else
        detail::emit_json(out, json{{"dot", to_dot(g, t ? &*t : nullptr)}});
      return kOk;
    }

    if (c_gen->parsed()) {
      std::filesystem::create_directories(out_path);
      json files = json::array();
      for (int i = 0; i < gen_count; ++i) {
        std::mt19937_64 rng(seed * 1000003ull + static_cast<uint64_t>(i));
        TwoPOneNFormula phi = random_2p1n(gen_vars, rng);
        std::string name = "2p1n_n" + std::to_string(gen_vars) + "_s" +
                           std::to_string(seed) + "_" + std::to_string(i) + ".cnf";
        detail::write_text((std::filesystem::path(out_path) / name).string(),
                           corpus_entry(phi, seed, i));
        files.push_back(name);
      }
      std::cout << canonical_dump(json{{"dir", out_path}, {"files", files}}) << "\n";
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidTreeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidGraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}

}  // namespace stclab::cli
