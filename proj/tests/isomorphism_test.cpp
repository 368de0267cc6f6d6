#include <gtest/gtest.h>

#include <random>

#include "finmod/isomorphism.hpp"
#include "oracles.hpp"

using namespace finmod;

TEST(Isomorphic, CyclesBySize) {
  for (std::size_t a = 1; a <= 6; ++a)
    for (std::size_t b = 1; b <= 6; ++b)
      EXPECT_EQ(isomorphic(make_cycle(a), make_cycle(b)).has_value(), a == b);
}

TEST(Isomorphic, SumsInAnyOrder) {
  Structure x = disjoint_sum({make_cycle(1), make_cycle(2), make_cycle(3)});
  Structure y = disjoint_sum({make_cycle(3), make_cycle(1), make_cycle(2)});
  auto m = isomorphic(x, y);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(is_isomorphism(x, y, *m));
  EXPECT_TRUE(is_isomorphism(y, x, m->inverse()));
  EXPECT_FALSE(isomorphic(x, disjoint_sum({make_cycle(2), make_cycle(2), make_cycle(2)})));
}

TEST(Isomorphic, ConstantsMustCorrespond) {
  Structure a = add_fixed_point(disjoint_sum({make_cycle(1), make_cycle(1)}), {"c"});
  // Same shape, constant moved to an old fixed point.
  Structure b(a.signature(), 3, {a.table(0)}, {}, {0});
  EXPECT_TRUE(isomorphic(a, b).has_value());
  Structure c(a.signature(), 3, {{0, 1, 1}}, {}, {2});
  EXPECT_FALSE(isomorphic(a, c).has_value());
}

TEST(Isomorphic, DifferentSignaturesNeverIsomorphic) {
  Structure a = make_cycle(2);
  Structure b(Signature::unar("H"), 2, {{1, 0}}, {}, {});
  EXPECT_FALSE(isomorphic(a, b).has_value());
}

// Agreement with trying every bijection, on random pairs that are often
// isomorphic (relabelings) and often not (independent draws).
TEST(Isomorphic, MatchesBijectionOracle) {
  std::mt19937_64 rng(23);
  int positives = 0, negatives = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng() % 6;
    const bool binary = rep % 3 == 0, pred = rep % 4 == 0;
    Structure a = oracle::random_structure(rng, n, binary, pred);
    Structure b = rep % 2 ? relabel(a, oracle::random_permutation(rng, n))
                          : oracle::random_structure(rng, n, binary, pred);
    const bool expected = oracle::isomorphic(a, b);
    auto got = isomorphic(a, b);
    EXPECT_EQ(got.has_value(), expected) << "rep " << rep;
    if (got) EXPECT_TRUE(is_isomorphism(a, b, *got));
    (expected ? positives : negatives)++;
  }
  EXPECT_GT(positives, 50);
  EXPECT_GT(negatives, 20);
}

// Regular structures defeat color refinement, so backtracking must decide.
TEST(Isomorphic, RegularUnarsNeedBacktracking) {
  Structure a = disjoint_sum({make_cycle(3), make_cycle(3)});
  Structure b = make_cycle(6);
  EXPECT_FALSE(isomorphic(a, b).has_value());
  std::mt19937_64 rng(29);
  Structure c = relabel(a, oracle::random_permutation(rng, 6));
  EXPECT_TRUE(isomorphic(a, c).has_value());
}
