#include <gtest/gtest.h>

#include <random>
#include <set>

#include "finmod/world_set.hpp"
#include "oracles.hpp"

using finmod::WorldSet;

TEST(WorldSet, BasicMembership) {
  WorldSet s(10, {1, 3, 9});
  EXPECT_EQ(s.count(), 3u);
  EXPECT_TRUE(s.test(3));
  EXPECT_FALSE(s.test(4));
  s.reset(3);
  s.set(4);
  EXPECT_EQ(s.points(), (std::vector<std::size_t>{1, 4, 9}));
  EXPECT_EQ(s.first(), 1u);
}

TEST(WorldSet, ComplementStaysInUniverse) {
  for (std::size_t n : {1u, 5u, 63u, 64u, 65u, 130u}) {
    WorldSet s(n);
    WorldSet c = ~s;
    EXPECT_TRUE(c.is_full());
    EXPECT_EQ(c.count(), n);
    EXPECT_TRUE((~c).empty());
  }
}

// Set algebra agrees with std::set on random instances, inline and heap.
TEST(WorldSet, OperationsMatchStdSet) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {7u, 64u, 100u, 200u}) {
    for (int rep = 0; rep < 50; ++rep) {
      std::set<std::size_t> a, b;
      WorldSet wa(n), wb(n);
      for (std::size_t x = 0; x < n; ++x) {
        if (rng() % 2) { a.insert(x); wa.set(x); }
        if (rng() % 3 == 0) { b.insert(x); wb.set(x); }
      }
      std::set<std::size_t> inter, uni, diff;
      for (auto x : a) {
        if (b.count(x)) inter.insert(x);
        else diff.insert(x);
        uni.insert(x);
      }
      uni.insert(b.begin(), b.end());
      auto as_set = [](const WorldSet& w) {
        auto p = w.points();
        return std::set<std::size_t>(p.begin(), p.end());
      };
      EXPECT_EQ(as_set(wa & wb), inter);
      EXPECT_EQ(as_set(wa | wb), uni);
      EXPECT_EQ(as_set(wa - wb), diff);
      EXPECT_EQ(wa.intersects(wb), !inter.empty());
      EXPECT_EQ(wa.is_subset_of(wb), diff.empty());
      EXPECT_EQ((wa | wb).count(), uni.size());
    }
  }
}

TEST(WorldSet, OrderIsNumericOnMasks) {
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t b = 0; b < 16; ++b)
      EXPECT_EQ(WorldSet::from_mask(4, a) < WorldSet::from_mask(4, b), a < b);
}

TEST(WorldSet, NextWalksMembers) {
  WorldSet s(150, {0, 63, 64, 149});
  std::vector<std::size_t> seen;
  for (auto p = s.first(); p < s.universe(); p = s.next(p + 1)) seen.push_back(p);
  EXPECT_EQ(seen, (std::vector<std::size_t>{0, 63, 64, 149}));
}

TEST(BlockLabels, NormalizeAndRoundTrip) {
  EXPECT_EQ(finmod::normalize_labels({5, 5, 2, 7, 2}),
            (finmod::BlockLabels{0, 0, 1, 2, 1}));
  for (const auto& p : oracle::partitions(5)) {
    auto blocks = finmod::blocks_of(p);
    EXPECT_EQ(finmod::labels_from_blocks(5, blocks), p);
  }
}

TEST(BlockLabels, RejectsNonPartitions) {
  EXPECT_THROW(finmod::labels_from_blocks(3, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(finmod::labels_from_blocks(3, {{0, 1}, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(finmod::labels_from_blocks(3, {{0, 1, 2}, {}}), std::invalid_argument);
  EXPECT_THROW(finmod::labels_from_blocks(3, {{0, 1, 3}, {2}}), std::invalid_argument);
}

TEST(Oracle, PartitionCountIsBell) {
  for (std::size_t n = 0; n <= 7; ++n)
    EXPECT_EQ(oracle::partitions(n).size(), oracle::bell(n));
  EXPECT_EQ(oracle::bell(10), 115975u);
}
