#include "stclab/corpus.hpp"

#include <gtest/gtest.h>

#include "stclab/cnf.hpp"

namespace stclab {
namespace {

TEST(RandomTwoPOneN, AlwaysValid) {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 50; ++round) {
    int n = 2 + static_cast<int>(rng() % 6);
    TwoPOneNFormula phi = random_2p1n(n, rng);
    EXPECT_EQ(phi.num_variables, n);
    RawCnf raw;
    raw.num_variables = phi.num_variables;
    for (const Clause& c : phi.clauses) {
      std::vector<int> lits;
      for (const Literal& l : c.literals)
        lits.push_back(l.positive ? l.variable + 1 : -(l.variable + 1));
      raw.clauses.push_back(lits);
    }
    EXPECT_TRUE(validate_2p1n(raw).empty()) << "round " << round;
  }
}

TEST(RandomTwoPOneN, DeterministicForSeed) {
  std::mt19937_64 a(42), b(42);
  EXPECT_EQ(write_dimacs(random_2p1n(4, a)), write_dimacs(random_2p1n(4, b)));
  std::mt19937_64 c(43);
  // different seed, almost surely a different instance
  EXPECT_NE(write_dimacs(random_2p1n(4, a)), write_dimacs(random_2p1n(4, c)));
}

TEST(RandomTwoPOneN, RejectsTooFewVariables) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(random_2p1n(1, rng), std::invalid_argument);
}

TEST(CorpusEntry, RecordsSeedAndParses) {
  std::mt19937_64 rng(7);
  TwoPOneNFormula phi = random_2p1n(3, rng);
  std::string text = corpus_entry(phi, 7, 2);
  EXPECT_NE(text.find("seed=7"), std::string::npos);
  EXPECT_NE(text.find("index=2"), std::string::npos);
  EXPECT_EQ(parse_dimacs(text), phi);
}

}  // namespace
}  // namespace stclab
