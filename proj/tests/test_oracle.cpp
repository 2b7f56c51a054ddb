#include <gtest/gtest.h>

#include <algorithm>

#include "test_support.hpp"

namespace wcp {
namespace {

using testing::st;
using Rows = std::vector<std::vector<std::uint8_t>>;

// plain odometer over every tuple, filtered by is_consistent_cut
std::vector<Cut> odometer(const FilteredComputation& fc) {
  std::vector<Cut> out;
  for (std::size_t i = 0; i < fc.n(); ++i)
    if (fc.length(i) == 0) return out;
  std::vector<Counter> idx(fc.n(), 1);
  for (;;) {
    if (is_consistent_cut(fc, Cut{idx})) out.push_back(Cut{idx});
    std::size_t k = fc.n();
    while (k > 0) {
      --k;
      if (idx[k] < fc.length(k)) {
        ++idx[k];
        break;
      }
      idx[k] = 1;
      if (k == 0) return out;
    }
  }
}

TEST(Enumerate, Examples) {
  const auto t1 = enumerate_consistent_cuts(filter(testing::t1()));
  EXPECT_NE(std::find(t1.begin(), t1.end(), Cut{{1, 1}}), t1.end());
  EXPECT_TRUE(enumerate_consistent_cuts(filter(testing::t3())).empty());
  const Computation single(1, {{st(0, 1, true, {1}), st(0, 2, true, {2}), st(0, 3, true, {3})}});
  EXPECT_EQ(enumerate_consistent_cuts(filter(single)),
            (std::vector<Cut>{Cut{{1}}, Cut{{2}}, Cut{{3}}}));
}

TEST(Enumerate, GuardsLargeInstances) {
  GenParams p;
  p.n = 2;
  p.m = 1025;
  p.send_prob = 1.0;
  p.recv_prob = 1.0;
  EXPECT_THROW(enumerate_consistent_cuts(filter(generate(p))), OracleTooLarge);
  p.m = 1024;  // exactly 2^20 tuples
  EXPECT_NO_THROW(enumerate_consistent_cuts(filter(generate(p))));
}

TEST(Enumerate, MatchesOdometerInLexicographicOrder) {
  for (const GenParams& p : testing::small_grid(300, 12)) {
    const auto fc = filter(generate(p));
    ASSERT_EQ(enumerate_consistent_cuts(fc), odometer(fc)) << "seed " << p.seed;
  }
}

TEST(BruteMinCut, Examples) {
  EXPECT_EQ(brute_min_cut(filter(testing::t1())).cut, (Cut{{1, 1}}));
  EXPECT_EQ(brute_min_cut(filter(testing::t2())).cut, (Cut{{2, 1}}));
  EXPECT_FALSE(brute_min_cut(filter(testing::t3())).found());
}

TEST(RejectionClosure, Examples) {
  auto fc = filter(testing::t2());
  auto c = rejection_closure(fc);
  EXPECT_EQ(c.rejected, (Rows{{1, 0}, {0, 0}}));
  EXPECT_EQ(c.failed, (std::vector<std::uint8_t>{0, 0}));

  fc = filter(testing::t3());
  c = rejection_closure(fc);
  EXPECT_EQ(c.rejected, (Rows{{1}, {0}}));
  EXPECT_EQ(c.failed, (std::vector<std::uint8_t>{1, 0}));

  fc = filter(testing::t1());
  c = rejection_closure(fc);
  EXPECT_EQ(c.rejected, (Rows{{0, 0}, {0, 0}}));
  EXPECT_FALSE(c.any_failed());

  fc = filter(testing::late_first());
  c = rejection_closure(fc);
  EXPECT_EQ(c.rejected, (Rows{{1, 1, 0}, {0}, {0}}));
  EXPECT_FALSE(c.any_failed());
}

TEST(RejectionClosure, PredictsDetectorsAndGraph) {
  for (const GenParams& p : testing::small_grid(500, 808)) {
    const auto fc = filter(generate(p));
    if (fc.has_empty_process()) continue;
    const auto f = build_F(fc);
    const auto closure = rejection_closure(fc);
    const auto rr = reach_oracle(build_R(fc), f);
    const auto brute = brute_min_cut(fc);
    ASSERT_EQ(brute.found(), !closure.any_failed()) << "seed " << p.seed;
    for (std::size_t i = 0; i < fc.n(); ++i) {
      std::size_t max_rr = 0;
      for (Counter j = 1; j <= fc.length(i); ++j)
        if (rr.contains(fc.node(i, j))) max_rr = j;
      ASSERT_EQ(max_rr, closure.max_rejected(i));
      // closure is a prefix on every process
      for (Counter j = 1; j <= closure.max_rejected(i); ++j) ASSERT_TRUE(closure.rejected[i][j - 1]);
      if (brute.found()) {
        ASSERT_EQ((*brute.cut)[i], closure.max_rejected(i) + 1);
      }
    }
  }
}

}  // namespace
}  // namespace wcp
