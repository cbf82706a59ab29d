#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stclab/cnf.hpp"

namespace stclab {

namespace detail {

// Bounded sampling and shuffling on top of mt19937_64 outputs directly, so
// generated corpora are byte-identical across standard library
// implementations.
inline uint64_t bounded(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

template <typename T>
void shuffle_inplace(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[bounded(rng, i)]);
}

}  // namespace detail

// Seeded random (2P1N) instance over n >= 2 variables, by rejection
// sampling: deal the 3n literal occurrences into clauses of sizes 2 and 3
// and retry whenever a clause would repeat a variable.
inline TwoPOneNFormula random_2p1n(int n, std::mt19937_64& rng, int max_attempts = 10000) {
  if (n < 2)
    throw std::invalid_argument("a (2P1N) formula needs at least 2 variables");

  // clause size mixes: a three-literal clauses, b two-literal ones,
  // 3a + 2b = 3n
  std::vector<std::pair<int, int>> mixes;
  for (int a = 0; 3 * a <= 3 * n; ++a)
    if ((3 * n - 3 * a) % 2 == 0) mixes.emplace_back(a, (3 * n - 3 * a) / 2);

  std::vector<int> tokens;
  for (int v = 1; v <= n; ++v) {
    tokens.push_back(v);
    tokens.push_back(v);
    tokens.push_back(-v);
  }

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    auto [a, b] = mixes[detail::bounded(rng, mixes.size())];
    std::vector<int> sizes(a, 3);
    sizes.insert(sizes.end(), b, 2);
    detail::shuffle_inplace(sizes, rng);
    detail::shuffle_inplace(tokens, rng);

    RawCnf raw;
    raw.num_variables = n;
    size_t next = 0;
    bool ok = true;
    for (int size : sizes) {
      std::vector<int> clause(tokens.begin() + next, tokens.begin() + next + size);
      next += size;
      for (int i = 0; i < size && ok; ++i)
        for (int j = i + 1; j < size; ++j)
          if (std::abs(clause[i]) == std::abs(clause[j])) {
            ok = false;
            break;
          }
      if (!ok) break;
      raw.clauses.push_back(std::move(clause));
    }
    if (ok && validate_2p1n(raw).empty()) return formula_from_raw(raw);
  }
  throw std::runtime_error("random (2P1N) sampling failed to produce a valid instance");
}

// DIMACS text with a provenance header recording the generation parameters.
inline std::string corpus_entry(const TwoPOneNFormula& phi, uint64_t seed, int index) {
  std::string out = "c random (2P1N) instance, seed=" + std::to_string(seed) +
                    " index=" + std::to_string(index) + "\n";
  return out + write_dimacs(phi);
}

}  // namespace stclab
