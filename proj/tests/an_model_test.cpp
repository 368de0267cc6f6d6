#include <gtest/gtest.h>

#include "finmod/an_model.hpp"

using namespace finmod;

namespace {
const TreeWord eps{};
}

TEST(AnModel, MultiplicationCases) {
  AnModel m(2);
  EXPECT_EQ(m.apply({eps, 0}, {eps, 0}), (AnPoint{eps, 1}));
  EXPECT_EQ(m.apply({eps, 2}, {eps, 0}), (AnPoint{{0}, 0}));
  EXPECT_EQ(m.apply({eps, 5}, {{0}, 3}), (AnPoint{eps, 3}));
  // Third case: (eps,0)(eps,1) = (eps, 1 + E(eps)) and E(eps) = 0.
  EXPECT_EQ(m.apply({eps, 0}, {eps, 1}), (AnPoint{eps, 1}));
  EXPECT_EQ(m.apply({{1}, 2}, {{1}, 3}), (AnPoint{{1}, 3 + 2}));
  // Words of maximal length do not extend.
  EXPECT_EQ(m.apply({{1}, 3}, {{1}, 1}), (AnPoint{{1}, 1}));
  EXPECT_EQ(an_apply(3, {{2}, 4}, {{2}, 1}), (AnPoint{{2, 1}, 1}));
}

TEST(AnModel, LengthLexRank) {
  EXPECT_EQ(length_lex_rank(eps, 3), 0u);
  EXPECT_EQ(length_lex_rank({0}, 3), 1u);
  EXPECT_EQ(length_lex_rank({2}, 3), 3u);
  EXPECT_EQ(length_lex_rank({0, 0}, 3), 4u);
  EXPECT_EQ(length_lex_rank({2, 2}, 3), 12u);
}

TEST(AnModel, PPowerShiftsIndex) {
  AnModel m(3);
  for (std::uint64_t i = 0; i < 10; ++i)
    EXPECT_EQ(m.p_power({{1, 2}, i}, 7), (AnPoint{{1, 2}, i + 7}));
}

TEST(AnModel, RejectsInvalidPointsAndCaps) {
  AnModel m(2);
  EXPECT_THROW(m.apply({{0, 0}, 0}, {eps, 0}), PreconditionError);
  EXPECT_THROW(m.apply({{2}, 0}, {eps, 0}), PreconditionError);
  EXPECT_THROW(AnModel(0), PreconditionError);
  EXPECT_THROW(AnModel(kMaxAnBranching + 1), CapExceeded);
  EXPECT_THROW(an_lemma_suite(2, kMaxAnBound + 1), CapExceeded);
}

TEST(AnLemmaSuite, PassesForTwoAndThree) {
  for (std::size_t n : {2u, 3u}) {
    auto rep = an_lemma_suite(n, 12);
    EXPECT_TRUE(rep.passed()) << rep.to_table();
    EXPECT_EQ(rep.entries.size(), 5u);
    for (const auto& e : rep.entries) EXPECT_EQ(e.evidence, Evidence::bounded);
  }
}

// With a non-injective code the formula no longer singles out one word.
TEST(AnLemmaSuite, NonInjectiveCodeFails) {
  auto rep = an_lemma_suite(2, 12, [](const TreeWord& s) { return std::uint64_t(s.size()); });
  EXPECT_FALSE(rep.passed());
  bool x1_failed = false, injective_failed = false;
  for (const auto& e : rep.entries) {
    if (e.name.rfind("an.lemma-x1", 0) == 0) x1_failed = !e.passed();
    if (e.name.rfind("an.code-injective", 0) == 0) injective_failed = !e.passed();
  }
  EXPECT_TRUE(x1_failed);
  EXPECT_TRUE(injective_failed);
}

TEST(InUpset, PrefixAndIndex) {
  EXPECT_TRUE(in_upset({{0}, 2}, {{0, 1}, 5}));
  EXPECT_FALSE(in_upset({{0}, 2}, {{1}, 5}));
  EXPECT_FALSE(in_upset({{0}, 2}, {{0}, 1}));
}
