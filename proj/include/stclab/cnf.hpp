#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stclab/errors.hpp"

namespace stclab {

// Occurrence slot of a literal. Every variable of a (2P1N) formula occurs
// exactly twice positively and once negatively; the two positive occurrences
// are distinguished by reading order.
enum class Slot { FirstPositive, SecondPositive, Negative };

inline int slot_rank(Slot s) { return static_cast<int>(s); }

struct Literal {
  int variable = 0; // 0-based
  bool positive = true;
  Slot slot = Slot::FirstPositive;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
  std::vector<Literal> literals; // 2 or 3, pairwise distinct variables

  int size() const { return static_cast<int>(literals.size()); }
  friend bool operator==(const Clause&, const Clause&) = default;
};

// CNF formula in which every variable occurs exactly three times: twice
// positively and once negatively, with clauses of two or three literals of
// pairwise distinct variables.
struct TwoPOneNFormula {
  int num_variables = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const TwoPOneNFormula&, const TwoPOneNFormula&) = default;
};

struct Assignment {
  std::vector<bool> values; // indexed by variable

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Clauses as signed DIMACS literals (1-based, negative = negated), before
// any (2P1N) structure is imposed.
struct RawCnf {
  int num_variables = 0;
  std::vector<std::vector<int>> clauses;
};

// ---------------------------------------------------------------------------
// DIMACS parsing

inline RawCnf parse_dimacs_raw(std::string_view text) {
  RawCnf raw;
  bool header_seen = false;
  long long declared_clauses = 0;
  std::vector<int> pending;

  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;

    size_t col = 0;
    auto skip_ws = [&] {
      while (col < line.size() && std::isspace(static_cast<unsigned char>(line[col]))) ++col;
    };
    skip_ws();
    if (col < line.size() && line[col] == 'c') {
      // comment line
    } else if (col < line.size() && line[col] == 'p') {
      if (header_seen) throw ParseError("duplicate problem header", line_no, (int)col + 1);
      std::istringstream hs{std::string(line.substr(col))};
      std::string p, kind;
      long long nv = -1, nc = -1;
      hs >> p >> kind >> nv >> nc;
      if (p != "p" || kind != "cnf" || nv < 0 || nc < 0 || !hs)
        throw ParseError("malformed header, expected 'p cnf <vars> <clauses>'", line_no, 1);
      if (nv == 0) throw ParseError("empty formula (0 variables) is not accepted", line_no, 1);
      raw.num_variables = static_cast<int>(nv);
      declared_clauses = nc;
      header_seen = true;
    } else {
      while (col < line.size()) {
        if (!header_seen)
          throw ParseError("clause before 'p cnf' header", line_no, (int)col + 1);
        size_t start = col;
        bool neg = false;
        if (line[col] == '-') {
          neg = true;
          ++col;
        }
        if (col >= line.size() || !std::isdigit(static_cast<unsigned char>(line[col])))
          throw ParseError("expected a literal", line_no, (int)start + 1);
        long long value = 0;
        while (col < line.size() && std::isdigit(static_cast<unsigned char>(line[col]))) {
          value = value * 10 + (line[col] - '0');
          ++col;
        }
        if (col < line.size() && !std::isspace(static_cast<unsigned char>(line[col])))
          throw ParseError("malformed literal", line_no, (int)start + 1);
        if (value == 0) {
          if (neg) throw ParseError("'-0' is not a literal", line_no, (int)start + 1);
          raw.clauses.push_back(pending);
          pending.clear();
        } else {
          if (value > raw.num_variables)
            throw ParseError("variable " + std::to_string(value) +
                                 " exceeds declared count " +
                                 std::to_string(raw.num_variables),
                             line_no, (int)start + 1);
          pending.push_back(neg ? -static_cast<int>(value) : static_cast<int>(value));
        }
        skip_ws();
      }
    }

    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }

  if (!header_seen) throw ParseError("missing 'p cnf' header");
  if (!pending.empty()) throw ParseError("last clause is not terminated by 0", line_no, 1);
  if (static_cast<long long>(raw.clauses.size()) != declared_clauses)
    throw ParseError("header declares " + std::to_string(declared_clauses) +
                     " clauses but " + std::to_string(raw.clauses.size()) + " were given");
  return raw;
}

// ---------------------------------------------------------------------------
// (2P1N) validation

inline std::vector<std::string> validate_2p1n(const RawCnf& raw) {
  std::vector<std::string> violations;
  if (raw.num_variables <= 0) {
    violations.push_back("formula has no variables");
    return violations;
  }
  std::vector<int> pos(raw.num_variables, 0), neg(raw.num_variables, 0);
  for (size_t ci = 0; ci < raw.clauses.size(); ++ci) {
    const auto& clause = raw.clauses[ci];
    std::string where = "clause " + std::to_string(ci + 1);
    if (clause.size() != 2 && clause.size() != 3)
      violations.push_back(where + " has " + std::to_string(clause.size()) +
                           " literals (want 2 or 3)");
    std::vector<int> vars;
    for (int lit : clause) {
      int v = std::abs(lit) - 1;
      if (v < 0 || v >= raw.num_variables) {
        violations.push_back(where + " references unknown variable");
        continue;
      }
      vars.push_back(v);
      (lit > 0 ? pos[v] : neg[v])++;
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
      violations.push_back(where + " repeats variable x" +
                           std::to_string(*std::adjacent_find(vars.begin(), vars.end()) + 1));
  }
  for (int v = 0; v < raw.num_variables; ++v) {
    if (pos[v] != 2 || neg[v] != 1)
      violations.push_back("variable x" + std::to_string(v + 1) + " occurs " +
                           std::to_string(pos[v]) + " times positively and " +
                           std::to_string(neg[v]) + " times negatively (want 2 and 1)");
  }
  return violations;
}

// Assumes validate_2p1n passed. Positive occurrences are slotted first/second
// in reading order (clause by clause, literal by literal).
inline TwoPOneNFormula formula_from_raw(const RawCnf& raw) {
  TwoPOneNFormula phi;
  phi.num_variables = raw.num_variables;
  std::vector<int> positives_seen(raw.num_variables, 0);
  for (const auto& clause : raw.clauses) {
    Clause c;
    for (int lit : clause) {
      Literal l;
      l.variable = std::abs(lit) - 1;
      l.positive = lit > 0;
      if (!l.positive)
        l.slot = Slot::Negative;
      else
        l.slot = positives_seen[l.variable]++ == 0 ? Slot::FirstPositive
                                                   : Slot::SecondPositive;
      c.literals.push_back(l);
    }
    phi.clauses.push_back(std::move(c));
  }
  return phi;
}

inline TwoPOneNFormula parse_dimacs(std::string_view text) {
  RawCnf raw = parse_dimacs_raw(text);
  auto violations = validate_2p1n(raw);
  if (!violations.empty()) {
    std::string msg = "not a (2P1N) formula: " + violations.front();
    if (violations.size() > 1)
      msg += " (+" + std::to_string(violations.size() - 1) + " more)";
    throw ParseError(msg);
  }
  return formula_from_raw(raw);
}

// Canonical writer: header, then clauses in original order, one per line.
inline std::string write_dimacs(const TwoPOneNFormula& phi) {
  std::ostringstream out;
  out << "p cnf " << phi.num_variables << " " << phi.clauses.size() << "\n";
  for (const Clause& c : phi.clauses) {
    for (const Literal& l : c.literals)
      out << (l.positive ? l.variable + 1 : -(l.variable + 1)) << " ";
    out << "0\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Evaluation and the small exact oracle

inline bool evaluate(const TwoPOneNFormula& phi, const Assignment& a) {
  if (static_cast<int>(a.values.size()) != phi.num_variables)
    throw std::invalid_argument("assignment must cover every variable");
  for (const Clause& c : phi.clauses) {
    bool satisfied = false;
    for (const Literal& l : c.literals)
      if (a.values[l.variable] == l.positive) {
        satisfied = true;
        break;
      }
    if (!satisfied) return false;
  }
  return true;
}

namespace detail {

inline bool sat_backtrack(const TwoPOneNFormula& phi, std::vector<signed char>& value,
                          int next) {
  // Fail as soon as some clause has every literal assigned false.
  for (const Clause& c : phi.clauses) {
    bool open = false;
    for (const Literal& l : c.literals) {
      signed char v = value[l.variable];
      if (v == -1 || (v == 1) == l.positive) {
        open = true;
        break;
      }
    }
    if (!open) return false;
  }
  if (next == phi.num_variables) return true;
  for (signed char choice : {0, 1}) { // false first: lexicographically smallest
    value[next] = choice;
    if (sat_backtrack(phi, value, next + 1)) return true;
  }
  value[next] = -1;
  return false;
}

}  // namespace detail

// Exhaustive backtracking search, deterministic: returns the
// lexicographically smallest satisfying assignment (false < true, variable 1
// most significant), or nothing when unsatisfiable. Guarded to small n.
inline std::optional<Assignment> solve_sat(const TwoPOneNFormula& phi) {
  if (phi.num_variables > 30)
    throw std::invalid_argument("refusing exhaustive SAT search for more than 30 variables");
  std::vector<signed char> value(phi.num_variables, -1);
  if (!detail::sat_backtrack(phi, value, 0)) return std::nullopt;
  Assignment a;
  a.values.assign(value.begin(), value.end());
  return a;
}

// ---------------------------------------------------------------------------
// JSON forms

inline nlohmann::json assignment_to_json(const Assignment& a) {
  nlohmann::json out = nlohmann::json::object();
  for (size_t i = 0; i < a.values.size(); ++i)
    out["x" + std::to_string(i + 1)] = static_cast<bool>(a.values[i]);
  return out;
}

inline nlohmann::json violations_to_json(const std::vector<std::string>& violations) {
  return nlohmann::json{{"valid", violations.empty()}, {"violations", violations}};
}

}  // namespace stclab
