#include <gtest/gtest.h>

#include <random>

#include "finmod/class_frame.hpp"
#include "finmod/morphism.hpp"
#include "oracles.hpp"

using namespace finmod;

namespace {

Structure sum123() { return disjoint_sum({make_cycle(1), make_cycle(2), make_cycle(3)}); }

}  // namespace

TEST(ClassFrame, SubmodelsOfSumAreReversedPowerset) {
  ClassFrame cf = class_frame(submodel_structures(sum123()), RelationKind::sub);
  EXPECT_EQ(cf.representatives.size(), 7u);
  KripkeFrame f = cf.as_kripke();
  EXPECT_TRUE(frames_isomorphic(f, powerset_frame(3, true, true)).has_value());
  EXPECT_TRUE(oracle::frames_isomorphic(f, powerset_frame(3, true, true)));
}

TEST(ClassFrame, FixedPointWithConstantGivesFullPowerset) {
  ClassFrame cf = class_frame(submodel_structures(add_fixed_point(sum123(), {"c"})),
                              RelationKind::sub);
  EXPECT_EQ(cf.representatives.size(), 8u);
  EXPECT_TRUE(frames_isomorphic(cf.as_kripke(), powerset_frame(3, false, true)));
}

TEST(ClassFrame, FixedPointWithoutConstantHasMoreClasses) {
  // Without a constant the fixed point is a separate one-element component
  // that can be dropped, so more iso-classes appear.
  ClassFrame cf = class_frame(submodel_structures(add_fixed_point(sum123())),
                              RelationKind::sub);
  EXPECT_EQ(cf.representatives.size(), 11u);
}

TEST(ClassFrame, ExtIsConverseOfSub) {
  auto cs = submodel_structures(sum123());
  ClassFrame sub = class_frame(cs, RelationKind::sub);
  ClassFrame ext = class_frame(cs, RelationKind::ext);
  ASSERT_EQ(sub.representatives.size(), ext.representatives.size());
  KripkeFrame fs = sub.as_kripke(), fe = ext.as_kripke();
  for (World a = 0; a < fs.size(); ++a)
    for (World b = 0; b < fs.size(); ++b) EXPECT_EQ(fs.has(a, b), fe.has(b, a));
}

TEST(ClassFrame, QuotientsOfCycleFormDivisorOrder) {
  ClassFrame cf = class_frame(quotient_structures(make_cycle(12)), RelationKind::quot);
  ASSERT_EQ(cf.representatives.size(), 6u);
  KripkeFrame f = cf.as_kripke();
  for (World a = 0; a < f.size(); ++a)
    for (World b = 0; b < f.size(); ++b) {
      const std::size_t sa = cf.representatives[a].size(),
                        sb = cf.representatives[b].size();
      EXPECT_EQ(f.has(a, b), sa % sb == 0) << sa << " " << sb;
    }
}

TEST(ClassFrame, TrivialityOfFiveCycle) {
  ClassFrame cf = class_frame(submodel_structures(make_cycle(5)), RelationKind::sub);
  EXPECT_EQ(cf.as_kripke(), reflexive_singleton());
}

// The relation of any class frame is a preorder, and class_of is
// consistent with isomorphism.
TEST(ClassFrame, PreorderAndClassAssignment) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    Structure s = oracle::random_structure(rng, 2 + rng() % 6, false, false);
    for (auto kind : {RelationKind::sub, RelationKind::quot, RelationKind::ext}) {
      auto cs = kind == RelationKind::quot ? quotient_structures(s) : submodel_structures(s);
      ClassFrame cf = class_frame(cs, kind);
      KripkeFrame f = cf.as_kripke();
      EXPECT_TRUE(f.is_reflexive());
      EXPECT_TRUE(f.is_transitive());
      for (std::size_t i = 0; i < cs.size(); ++i)
        EXPECT_TRUE(oracle::isomorphic(cs[i], cf.representatives[cf.class_of[i]]));
      for (std::size_t a = 0; a < cf.representatives.size(); ++a)
        for (std::size_t b = a + 1; b < cf.representatives.size(); ++b)
          EXPECT_FALSE(oracle::isomorphic(cf.representatives[a], cf.representatives[b]));
    }
  }
}

TEST(ClassFrame, Preconditions) {
  EXPECT_THROW(class_frame({}, RelationKind::sub), PreconditionError);
  EXPECT_THROW(class_frame({make_cycle(2), Structure(Signature::unar("H"), 1, {{0}}, {}, {})},
                           RelationKind::sub),
               PreconditionError);
  EXPECT_THROW(class_frame({make_cycle(13)}, RelationKind::quot), CapExceeded);
  EXPECT_THROW(relation_kind_from_string("up"), PreconditionError);
  EXPECT_EQ(relation_kind_from_string("ext"), RelationKind::ext);
}
