#include <gtest/gtest.h>

#include "finmod/verify.hpp"
#include "oracles.hpp"

using namespace finmod;

namespace {
VerifyConfig small_config() {
  VerifyConfig c;
  c.pretree_max = 2;
  c.cycle_max = 6;
  c.cycle_oracle_max = 6;
  c.medvedev_max = 3;
  c.random_frames = 5;
  c.subalgebra_cases = 3;
  c.an_sizes = {2};
  c.an_bound = 6;
  return c;
}
}  // namespace

TEST(VerifyPaper, DefaultConfigPassesEveryCriterion) {
  const auto rep = verify_paper();
  EXPECT_TRUE(rep.passed()) << rep.to_table();
  for (const auto& c : criteria())
    EXPECT_FALSE(criterion_entries(rep, c.number).empty()) << c.name;
}

TEST(VerifyPaper, Deterministic) {
  const auto a = verify_paper(small_config()), b = verify_paper(small_config());
  EXPECT_EQ(a.to_table(), b.to_table());
}

TEST(VerifyPaper, EveryEntryBelongsToOneCriterion) {
  const auto rep = verify_paper(small_config());
  std::size_t total = 0;
  for (const auto& c : criteria()) total += criterion_entries(rep, c.number).size();
  EXPECT_EQ(total, rep.entries.size());
}

TEST(VerifyPaper, OversizedConfigIsRefusedNotPassed) {
  VerifyConfig c = small_config();
  c.an_sizes = {5};
  const auto rep = verify_paper(c);
  EXPECT_FALSE(rep.passed());
  bool refused = false;
  for (const auto& e : criterion_entries(rep, 9))
    refused = refused || e.status == CheckStatus::refused;
  EXPECT_TRUE(refused);
  EXPECT_NE(rep.to_table().find("REFUSED"), std::string::npos);
}

TEST(VerifyDetail, PartitionEnumerationCountsBellNumbers) {
  for (std::size_t n = 1; n <= 7; ++n) {
    std::size_t count = 0;
    detail::for_each_partition(n, [&](const BlockLabels&) { ++count; });
    EXPECT_EQ(count, oracle::bell(n)) << n;
  }
}

TEST(VerifyDetail, DivisorCount) {
  EXPECT_EQ(detail::divisor_count(1), 1u);
  EXPECT_EQ(detail::divisor_count(12), 6u);
  EXPECT_EQ(detail::divisor_count(13), 2u);
}

TEST(Report, TableAndCounts) {
  VerificationReport r;
  r.add("a", "x", true, "fine");
  r.add("b", "y", false, "broken", Evidence::bounded);
  r.refuse("c", "z", "too big");
  EXPECT_FALSE(r.passed());
  const std::string t = r.to_table();
  EXPECT_NE(t.find("1/3 checks passed"), std::string::npos) << t;
  EXPECT_NE(t.find("bounded evidence"), std::string::npos);
  EXPECT_NE(t.find("FAIL"), std::string::npos);
}
