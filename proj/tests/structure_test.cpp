#include <gtest/gtest.h>

#include <random>

#include "finmod/error.hpp"
#include "finmod/isomorphism.hpp"
#include "finmod/structure.hpp"
#include "oracles.hpp"

using namespace finmod;

TEST(Signature, RejectsDuplicatesAndZeroArity) {
  EXPECT_THROW(Signature({{"F", 1}}, {{"F", 2}}, {}), FormatError);
  EXPECT_THROW(Signature({{"F", 0}}, {}, {}), FormatError);
  EXPECT_THROW(Signature({}, {}, {"c", "c"}), FormatError);
  EXPECT_NO_THROW(Signature({{"F", 1}, {"G", 2}}, {{"P", 1}}, {"c"}));
}

TEST(Structure, ValidatesTables) {
  EXPECT_THROW(Structure(Signature::unar(), 3, {{5, 0, 1}}, {}, {}), FormatError);
  EXPECT_THROW(Structure(Signature::unar(), 0, {{}}, {}, {}), FormatError);
  EXPECT_THROW(Structure(Signature::unar(), 3, {{0, 1}}, {}, {}), FormatError);
  EXPECT_THROW(Structure(Signature::unar(), 3, {}, {}, {}), FormatError);
  EXPECT_THROW(Structure(Signature({{"F", 1}}, {}, {"c"}), 2, {{0, 1}}, {}, {2}),
               FormatError);
}

TEST(Structure, PredicateTuplesNormalized) {
  Structure s(Signature({{"F", 1}}, {{"P", 2}}, {}), 2, {{0, 1}},
              {{{1, 0}, {0, 1}, {1, 0}}}, {});
  EXPECT_EQ(s.extension(0).size(), 2u);
  std::vector<Element> t{1, 0};
  EXPECT_TRUE(s.holds(0, t));
  EXPECT_THROW(Structure(Signature({{"F", 1}}, {{"P", 2}}, {}), 2, {{0, 1}},
                         {{{1}}}, {}),
               FormatError);
}

TEST(Structure, TableIndexOrder) {
  // G(a, b) = a*2 + b on a universe of size 4, entries taken mod 4.
  std::vector<Element> t(16);
  for (Element a = 0; a < 4; ++a)
    for (Element b = 0; b < 4; ++b) t[a * 4 + b] = (a * 2 + b) % 4;
  Structure s(Signature({{"G", 2}}, {}, {}), 4, {t}, {}, {});
  std::vector<Element> args{3, 1};
  EXPECT_EQ(s.apply(0, args), (3u * 2 + 1) % 4);
  std::vector<Element> back(2);
  decode_index(s.index_of(args), 4, back);
  EXPECT_EQ(back, args);
}

TEST(MakeCycle, Successor) {
  Structure c = make_cycle(3);
  EXPECT_EQ(c.size(), 3u);
  EXPECT_EQ(c.table(0), (std::vector<Element>{1, 2, 0}));
  EXPECT_THROW(make_cycle(0), PreconditionError);
}

TEST(DisjointSum, ConcatenatesAndRejectsConstants) {
  Structure s = disjoint_sum({make_cycle(1), make_cycle(2)});
  EXPECT_EQ(s.table(0), (std::vector<Element>{0, 2, 1}));
  Structure with_c = add_fixed_point(make_cycle(2), {"c"});
  EXPECT_THROW(disjoint_sum({with_c, with_c}), PreconditionError);
  Structure bin(Signature({{"G", 2}}, {}, {}), 1, {{0}}, {}, {});
  EXPECT_THROW(disjoint_sum({bin, bin}), PreconditionError);
}

TEST(AddFixedPoint, NewPointIsFixedAndNamed) {
  Structure s = add_fixed_point(make_cycle(2));
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.apply(0, Element{2}), 2u);
  EXPECT_TRUE(s.signature().constants().empty());
  Structure c = add_fixed_point(make_cycle(2), {"c"});
  EXPECT_EQ(c.constants(), (std::vector<Element>{2}));
}

TEST(InducedSubmodel, RelabelsInIncreasingOrder) {
  Structure s = disjoint_sum({make_cycle(2), make_cycle(3)});
  Structure sub = induced_submodel(s, WorldSet(5, {2, 3, 4}));
  EXPECT_TRUE(isomorphic(sub, make_cycle(3)).has_value());
  EXPECT_EQ(sub.table(0), (std::vector<Element>{1, 2, 0}));
  EXPECT_THROW(induced_submodel(s, WorldSet(5, {0})), PreconditionError);
  EXPECT_THROW(induced_submodel(s, WorldSet(5)), PreconditionError);
}

// Relabeling by a random permutation always gives an isomorphic copy.
TEST(Relabel, ProducesIsomorphicCopies) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 1 + rng() % 6;
    Structure s = oracle::random_structure(rng, n, rep % 2, rep % 3 == 0, {"c"});
    auto perm = oracle::random_permutation(rng, n);
    Structure t = relabel(s, perm);
    EXPECT_TRUE(oracle::isomorphic(s, t));
    auto m = isomorphic(s, t);
    ASSERT_TRUE(m.has_value());
    EXPECT_TRUE(is_isomorphism(s, t, *m));
  }
  EXPECT_THROW(relabel(make_cycle(3), {0, 0, 1}), PreconditionError);
}
