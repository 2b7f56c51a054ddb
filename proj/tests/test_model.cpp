#include <gtest/gtest.h>

#include "test_support.hpp"

namespace wcp {
namespace {

using testing::st;

TEST(HappenedBefore, ComponentwiseDefinition) {
  EXPECT_TRUE(happened_before_full(VectorClock{1, 0}, VectorClock{1, 2}));
  EXPECT_FALSE(happened_before_full(VectorClock{1, 0}, VectorClock{1, 0}));
  EXPECT_FALSE(happened_before_full(VectorClock{1, 0}, VectorClock{0, 1}));
  EXPECT_THROW(happened_before_full(VectorClock{1, 0}, VectorClock{1, 0, 0}), ModelError);
}

TEST(HappenedBefore, MatchesCausalClosureOnT2) {
  const Computation comp = testing::t2();
  const testing::CausalClosure closure(comp);
  const LocalState& a1 = comp.state(0, 1);
  const LocalState& a2 = comp.state(0, 2);
  const LocalState& b1 = comp.state(1, 1);
  EXPECT_TRUE(closure.before(a1, b1));
  EXPECT_FALSE(closure.before(a2, b1));
  EXPECT_TRUE(happened_before_fast(a1, b1));
  EXPECT_FALSE(happened_before_fast(a2, b1));
  EXPECT_TRUE(happened_before_fast(a1, a2));
  EXPECT_THROW(happened_before_fast(a1, a1), ModelError);
}

TEST(Concurrent, Examples) {
  EXPECT_TRUE(concurrent(st(0, 1, true, {1, 0}), st(1, 1, true, {0, 1})));
  EXPECT_FALSE(concurrent(st(0, 1, true, {1, 0}), st(1, 2, true, {1, 2})));
  const auto s = st(0, 1, true, {1, 0});
  EXPECT_FALSE(concurrent(s, s));
}

TEST(ConsistentCut, Examples) {
  EXPECT_TRUE(is_consistent_cut(filter(testing::t1()), Cut{{1, 1}}));
  EXPECT_FALSE(is_consistent_cut(filter(testing::t2()), Cut{{1, 1}}));
  const Computation single(1, {{st(0, 1, true, {1}), st(0, 2, true, {2})}});
  EXPECT_TRUE(is_consistent_cut(filter(single), Cut{{2}}));
  EXPECT_THROW(is_consistent_cut(filter(testing::t1()), Cut{{3, 1}}), ModelError);
  EXPECT_THROW(is_consistent_cut(filter(testing::t1()), Cut{{1}}), ModelError);
}

TEST(Computation, ShapeIsEnforced) {
  EXPECT_THROW(Computation(0, {}), ModelError);
  EXPECT_THROW(Computation(2, {{st(0, 1, true, {1, 0})}}), ModelError);
  EXPECT_THROW(Computation(2, {{st(0, 2, true, {2, 0})}, {}}), ModelError);
  EXPECT_THROW(Computation(2, {{st(0, 1, true, {1})}, {}}), ModelError);
}

TEST(Filter, AllTrueKeepsEverything) {
  const auto fc = filter(testing::t1());
  EXPECT_FALSE(fc.has_empty_process());
  EXPECT_EQ(fc.length(0), 2u);
  EXPECT_EQ(fc.length(1), 2u);
  const auto b2 = fc.fclock({1, 2});
  EXPECT_EQ(std::vector<Counter>(b2.begin(), b2.end()), (std::vector<Counter>{1, 2}));
}

TEST(Filter, EmptyProcessIsFlagged) {
  const Computation comp(2, {{st(0, 1, true, {1, 0})}, {st(1, 1, false, {0, 1})}});
  const auto fc = filter(comp);
  ASSERT_TRUE(fc.has_empty_process());
  EXPECT_EQ(fc.empty_processes(), std::vector<std::size_t>{1});
}

TEST(Filter, ReindexesAndRemapsClocks) {
  const auto fc = filter(testing::t2(/*b1_pred=*/false));
  ASSERT_EQ(fc.length(1), 1u);
  EXPECT_EQ(fc.original({1, 1}).index, 2u);
  const auto b2 = fc.fclock({1, 1});
  EXPECT_EQ(std::vector<Counter>(b2.begin(), b2.end()), (std::vector<Counter>{1, 1}));
}

class GeneratedTraces : public ::testing::TestWithParam<std::size_t> {};

TEST_P(GeneratedTraces, FastAgreesWithFullAndPartialOrderHolds) {
  const std::size_t n = GetParam();
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenParams p;
    p.n = n;
    p.m = 1 + seed % 8;
    p.send_prob = 0.5;
    p.recv_prob = 0.7;
    p.seed = seed;
    const Computation comp = generate(p);
    const testing::CausalClosure closure(comp);
    std::vector<const LocalState*> all;
    for (const auto& tr : comp.traces())
      for (const auto& s : tr) all.push_back(&s);

    for (const auto* s : all) {
      EXPECT_FALSE(happened_before_full(*s, *s));
      for (const auto* t : all) {
        if (s == t) continue;
        const bool full = happened_before_full(*s, *t);
        ASSERT_EQ(full, happened_before_fast(*s, *t));
        ASSERT_EQ(full, closure.before(*s, *t));
        if (!full) continue;
        for (const auto* u : all) {
          if (happened_before_full(*t, *u)) {
            ASSERT_TRUE(happened_before_full(*s, *u));
          }
        }
      }
    }
  }
}

TEST_P(GeneratedTraces, FilterPreservesOrderAndFclockCountsPredecessors) {
  const std::size_t n = GetParam();
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    GenParams p;
    p.n = n;
    p.m = 8;
    p.send_prob = 0.6;
    p.recv_prob = 0.6;
    p.pred_density = 0.5;
    p.seed = seed;
    const auto fc = filter(generate(p));
    for (std::size_t i = 0; i < n; ++i) {
      for (Counter j = 1; j <= fc.length(i); ++j) {
        const StateRef x{i, j};
        const auto fclock = fc.fclock(x);
        EXPECT_EQ(fclock[i], j);
        for (std::size_t k = 0; k < n; ++k) {
          Counter brute = 0;
          for (Counter y = 1; y <= fc.length(k); ++y) {
            const bool before_or_same =
                StateRef{k, y} == x || happened_before_full(fc.original({k, y}), fc.original(x));
            if (before_or_same) brute = y;
            // filtered order agrees with the original clocks
            if (!(StateRef{k, y} == x)) {
              ASSERT_EQ(fc.happened_before({k, y}, x),
                        happened_before_full(fc.original({k, y}), fc.original(x)));
            }
          }
          if (k != i) {
            EXPECT_EQ(fclock[k], brute);
          }
          EXPECT_LE(fclock[k], fc.length(k));
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(ProcessCounts, GeneratedTraces, ::testing::Values(2, 3, 4, 5));

}  // namespace
}  // namespace wcp
