#include <gtest/gtest.h>

#include <random>

#include "finmod/eval.hpp"
#include "oracles.hpp"

using namespace finmod;

namespace {

Valuation random_valuation(std::mt19937_64& rng, const GeneralFrame& g,
                           const std::vector<std::string>& vars) {
  Valuation v;
  for (const auto& x : vars) v[x] = g.members()[rng() % g.members().size()];
  return v;
}

}  // namespace

TEST(TruthSet, Basics) {
  KripkeFrame c = chain(2, false);
  Valuation v{{"p", WorldSet(2, {1})}};
  EXPECT_EQ(truth_set(c, v, parse_formula("false")), WorldSet(2));
  EXPECT_EQ(truth_set(c, v, parse_formula("<>p")), WorldSet(2, {0}));
  EXPECT_EQ(truth_set(c, v, parse_formula("[]p")), WorldSet(2, {0, 1}));
  EXPECT_THROW(truth_set(c, v, parse_formula("q")), PreconditionError);
}

TEST(TruthSet, RejectsInadmissibleValuation) {
  GeneralFrame t = subalgebra_generated(full_general(cluster(2)), {});
  EXPECT_THROW(truth_set(t, {{"p", WorldSet(2, {0})}}, parse_formula("p")),
               PreconditionError);
}

// Truth sets are algebra members, agree with pointwise evaluation, and
// satisfy the box/diamond duality.
TEST(TruthSet, ClosureOracleAndDuality) {
  std::mt19937_64 rng(79);
  const std::vector<std::string> vars = {"p", "q"};
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + rng() % 6;
    KripkeFrame f = oracle::random_frame(rng, n, 3);
    GeneralFrame g = subalgebra_generated(
        full_general(f), {WorldSet::from_mask(n, rng() % (1u << n))});
    for (int k = 0; k < 10; ++k) {
      Formula phi = oracle::random_formula(rng, vars, 4);
      Valuation v = random_valuation(rng, g, vars);
      WorldSet t = truth_set(g, v, phi);
      EXPECT_TRUE(g.contains(t)) << to_string(phi);
      std::map<std::string, std::uint64_t> masks;
      for (const auto& [x, s] : v) masks[x] = s.low_word();
      for (World w = 0; w < n; ++w)
        EXPECT_EQ(t.test(w), oracle::holds(f, masks, phi, w)) << to_string(phi);
      EXPECT_EQ(truth_set(g, v, Formula::box(phi)),
                truth_set(g, v, Formula::neg(Formula::dia(Formula::neg(phi)))));
    }
  }
}

TEST(ValidIn, Examples) {
  GeneralFrame q2 = full_general(pretree_q(2, false));
  EXPECT_TRUE(valid_in(q2, parse_formula("p -> <>p")).valid);
  auto r = valid_in(q2, parse_formula("<>[]p -> []<>p"));
  ASSERT_FALSE(r.valid);
  EXPECT_FALSE(truth_set(q2, r.countervaluation, parse_formula("<>[]p -> []<>p")).test(r.world));
  EXPECT_EQ(r.countervaluation.at("p"), WorldSet(6, {2, 3}));
}

TEST(ValidIn, KIsValidEverywhere) {
  std::mt19937_64 rng(83);
  for (int rep = 0; rep < 20; ++rep) {
    KripkeFrame f = oracle::random_frame(rng, 1 + rng() % 5, 2);
    EXPECT_TRUE(valid_in(full_general(f), parse_formula(axiom("K").text)).valid);
  }
}

TEST(ValidIn, CountervaluationIsLexicographicallyFirst) {
  // On the irreflexive singleton p -> <>p fails exactly when p = {0}.
  auto r = valid_in(full_general(irreflexive_singleton()), parse_formula("p -> <>p"));
  ASSERT_FALSE(r.valid);
  EXPECT_EQ(r.countervaluation.at("p"), WorldSet(1, {0}));
  EXPECT_EQ(r.examined, 2u);
  // Two variables: first variable most significant.
  auto s = valid_in(full_general(irreflexive_singleton()), parse_formula("p | ~q"));
  ASSERT_FALSE(s.valid);
  EXPECT_EQ(s.countervaluation.at("p"), WorldSet(1));
  EXPECT_EQ(s.countervaluation.at("q"), WorldSet(1, {0}));
}

TEST(ValidIn, RefusesWithExactCount) {
  GeneralFrame g = full_general(cluster(12));
  try {
    valid_in(g, parse_formula("p & q -> <>p"));
    FAIL() << "expected refusal";
  } catch (const CapExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("16777216"), std::string::npos) << e.what();
  }
}

// valid_in and search_valid agree with the per-world oracle on all small
// frames with powerset algebras.
TEST(ValidIn, MatchesOracleOnSmallFrames) {
  std::mt19937_64 rng(89);
  for (int rep = 0; rep < 80; ++rep) {
    const std::size_t n = 1 + rng() % 6;
    KripkeFrame f = oracle::random_frame(rng, n, 2 + rep % 3);
    const auto names = all_axiom_names();
    Formula phi = rep % 2 ? parse_formula(axiom(names[rng() % names.size()]).text)
                          : oracle::random_formula(rng, {"p", "q"}, 4);
    const bool expected = oracle::valid(f, phi);
    EXPECT_EQ(valid_in(full_general(f), phi).valid, expected) << to_string(phi);
    auto s = search_valid(f, phi);
    EXPECT_EQ(s.valid, expected) << to_string(phi);
    if (!s.valid) EXPECT_FALSE(truth_set(f, s.countervaluation, phi).test(s.world));
  }
}

TEST(ValidIn, EveryThreeWorldFrameAgainstOracle) {
  const auto names = all_axiom_names();
  for (std::uint32_t bits = 0; bits < (1u << 9); ++bits) {
    std::vector<Edge> e;
    for (World i = 0; i < 9; ++i)
      if ((bits >> i) & 1U) e.emplace_back(i / 3, i % 3);
    KripkeFrame f(3, e);
    for (const auto& name : names) {
      Formula phi = parse_formula(axiom(name).text);
      const bool expected = oracle::valid(f, phi);
      ASSERT_EQ(valid_in(full_general(f), phi).valid, expected) << name << " " << bits;
      ASSERT_EQ(search_valid(f, phi).valid, expected) << name << " " << bits;
    }
  }
}

// If phi -> psi is valid then <>phi -> <>psi is valid.
TEST(ValidIn, MonotoneRule) {
  std::mt19937_64 rng(97);
  int premises = 0;
  for (int rep = 0; rep < 300; ++rep) {
    KripkeFrame f = oracle::random_frame(rng, 1 + rng() % 4, 2);
    GeneralFrame g = full_general(f);
    Formula a = oracle::random_formula(rng, {"p"}, 3);
    Formula b = oracle::random_formula(rng, {"p"}, 3);
    if (!valid_in(g, Formula::impl(a, b)).valid) continue;
    ++premises;
    EXPECT_TRUE(valid_in(g, Formula::impl(Formula::dia(a), Formula::dia(b))).valid);
  }
  EXPECT_GT(premises, 10);
}

// Substituting any formula for p preserves validity.
TEST(ValidIn, SubstitutionClosure) {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 1 + rng() % 4;
    KripkeFrame f = oracle::random_frame(rng, n, 2);
    GeneralFrame g = subalgebra_generated(full_general(f),
                                          {WorldSet::from_mask(n, rng() % (1u << n))});
    for (const auto& name : all_axiom_names()) {
      Formula phi = parse_formula(axiom(name).text);
      if (!valid_in(g, phi).valid) continue;
      Formula psi = oracle::random_formula(rng, {"p", "q"}, 2);
      EXPECT_TRUE(valid_in(g, phi.substitute({{"p", psi}})).valid) << name;
    }
  }
}

TEST(Battery, PretreeQ2) {
  AxiomReport r = axiom_battery(full_general(pretree_q(2, false)));
  for (const char* a : {"N", "K", "T", "4"}) EXPECT_TRUE(r.valid(a)) << a;
  for (const char* a : {".2", ".1c", "Grz", "TRIV"}) EXPECT_FALSE(r.valid(a)) << a;
}

TEST(Battery, PretreeWithTop) {
  AxiomReport r = axiom_battery(full_general(pretree_q(2, true)));
  for (const char* a : {"T", "4", ".2", ".1c", ".2.1"}) EXPECT_TRUE(r.valid(a)) << a;
}

TEST(Battery, ReflexiveSingletonValidatesEverything) {
  AxiomReport r = axiom_battery(full_general(reflexive_singleton()));
  for (const auto& e : r.entries) EXPECT_TRUE(e.result.valid) << e.name;
}

TEST(Battery, KripkeSearchOnQ3) {
  AxiomReport r = axiom_battery(pretree_q(3, false));
  for (const char* a : {"N", "K", "T", "4"}) EXPECT_TRUE(r.valid(a)) << a;
  for (const char* a : {".2", ".1c", "Grz", "TRIV"}) {
    const auto& e = r.at(a);
    ASSERT_FALSE(e.result.valid) << a;
    EXPECT_FALSE(truth_set(pretree_q(3, false), e.result.countervaluation,
                           parse_formula(e.formula))
                     .test(e.result.world));
  }
}

TEST(Battery, GrzFailsOnClusters) {
  for (std::size_t n = 2; n <= 4; ++n)
    EXPECT_FALSE(valid_in(full_general(cluster(n)), parse_formula(axiom("Grz").text)).valid);
  EXPECT_TRUE(valid_in(full_general(chain(4, true)), parse_formula(axiom("Grz").text)).valid);
}

TEST(Battery, UnknownAxiom) { EXPECT_THROW(axiom("B"), PreconditionError); }

TEST(SearchValid, BudgetIsEnforced) {
  EXPECT_THROW(search_valid(pretree_q(3, false), parse_formula(axiom("Grz").text), 3),
               CapExceeded);
}
