#include <gtest/gtest.h>

#include <numeric>

#include "test_support.hpp"

namespace wcp {
namespace {

using testing::st;

constexpr Color R = Color::Red;
constexpr Color G = Color::Green;

// (1,1) -> (3,1) and (2,1) -> (3,1); P1 and P2 must advance together.
Computation two_reds() {
  return Computation(3, {{st(0, 1, true, {1, 0, 0}), st(0, 2, true, {2, 0, 0})},
                         {st(1, 1, true, {0, 1, 0}), st(1, 2, true, {0, 2, 0})},
                         {st(2, 1, true, {1, 1, 1})}});
}

TEST(InitCut, Examples) {
  auto f = init_cut(filter(testing::t1()));
  ASSERT_TRUE(f);
  EXPECT_EQ(f->current, (std::vector<Counter>{1, 1}));
  EXPECT_EQ(f->color, (std::vector<Color>{G, G}));

  f = init_cut(filter(testing::t2()));
  ASSERT_TRUE(f);
  EXPECT_EQ(f->color, (std::vector<Color>{R, G}));

  const Computation single(1, {{st(0, 1, true, {1})}});
  f = init_cut(filter(single));
  ASSERT_TRUE(f);
  EXPECT_EQ(f->current, std::vector<Counter>{1});
  EXPECT_EQ(f->color, std::vector<Color>{G});
}

TEST(InitCut, EmptyProcessShortCircuits) {
  const Computation comp(2, {{st(0, 1, true, {1, 0})}, {st(1, 1, false, {0, 1})}});
  EXPECT_FALSE(init_cut(filter(comp)));
  EXPECT_FALSE(opt_detect(filter(comp)).found());
  EXPECT_FALSE(seq_detect(filter(comp)).found());
}

TEST(Recolor, Examples) {
  const auto fc = filter(testing::t2());
  EXPECT_EQ(recolor(fc, Frontier{{1, 1}, {}}).color, (std::vector<Color>{R, G}));
  EXPECT_EQ(recolor(fc, Frontier{{2, 1}, {}}).color, (std::vector<Color>{G, G}));
  EXPECT_EQ(recolor(filter(testing::t1()), Frontier{{1, 1}, {}}).color, (std::vector<Color>{G, G}));
}

TEST(AdvanceRound, Examples) {
  const auto fc2 = filter(testing::t2());
  auto next = advance_round(fc2, Frontier{{1, 1}, {R, G}});
  ASSERT_TRUE(next);
  EXPECT_EQ(next->current, (std::vector<Counter>{2, 1}));
  EXPECT_EQ(next->color, (std::vector<Color>{G, G}));

  const auto fc3 = filter(testing::t3());
  EXPECT_FALSE(advance_round(fc3, Frontier{{1, 1}, {R, G}}));

  const auto fc = filter(two_reds());
  auto start = init_cut(fc);
  ASSERT_TRUE(start);
  EXPECT_EQ(start->color, (std::vector<Color>{R, R, G}));
  Metrics m;
  WorkerPool pool;
  next = advance_round(fc, *start, pool, m);
  ASSERT_TRUE(next);
  EXPECT_EQ(next->current, (std::vector<Counter>{2, 2, 1}));
  EXPECT_FALSE(next->any_red());
  EXPECT_EQ(m.states_advanced, 2u);
  EXPECT_EQ(m.rounds, 1u);
}

TEST(AdvanceRound, RequiresARedProcess) {
  const auto fc = filter(testing::t1());
  EXPECT_THROW(advance_round(fc, Frontier{{1, 1}, {G, G}}), InvariantError);
}

TEST(OptDetect, ReferenceTraces) {
  auto r = opt_detect(filter(testing::t1()));
  ASSERT_TRUE(r.found());
  EXPECT_EQ(*r.cut, (Cut{{1, 1}}));
  EXPECT_EQ(r.metrics.rounds, 0u);

  r = opt_detect(filter(testing::t2()));
  ASSERT_TRUE(r.found());
  EXPECT_EQ(*r.cut, (Cut{{2, 1}}));
  EXPECT_EQ(r.metrics.rounds, 1u);

  EXPECT_FALSE(opt_detect(filter(testing::t3())).found());
}

TEST(SeqDetect, ReferenceTraces) {
  auto r = seq_detect(filter(testing::t1()));
  ASSERT_TRUE(r.found());
  EXPECT_EQ(*r.cut, (Cut{{1, 1}}));
  r = seq_detect(filter(testing::t2()));
  ASSERT_TRUE(r.found());
  EXPECT_EQ(*r.cut, (Cut{{2, 1}}));
  EXPECT_FALSE(seq_detect(filter(testing::t3())).found());

  r = seq_detect(filter(two_reds()));
  ASSERT_TRUE(r.found());
  EXPECT_EQ(*r.cut, (Cut{{2, 2, 1}}));
  EXPECT_EQ(r.metrics.rounds, 2u);
}

TEST(OptDetect, RoundInvariantsOnGeneratedTraces) {
  for (const GenParams& p : testing::small_grid(400, 7)) {
    const auto fc = filter(generate(p));
    WorkerPool pool;
    Metrics m;
    auto f = init_cut(fc, pool, m);
    if (!f) continue;
    std::size_t total = std::accumulate(fc.lengths().begin(), fc.lengths().end(), std::size_t{0});
    while (f->any_red()) {
      // invariant: a red state precedes some frontier state
      for (std::size_t i = 0; i < fc.n(); ++i) {
        if (f->color[i] != R) continue;
        bool precedes = false;
        for (std::size_t j = 0; j < fc.n(); ++j)
          precedes |= j != i && fc.happened_before({i, f->current[i]}, {j, f->current[j]});
        ASSERT_TRUE(precedes);
      }
      const auto sum_before = std::accumulate(f->current.begin(), f->current.end(), std::size_t{0});
      auto next = advance_round(fc, *f, pool, m);
      if (!next) break;
      for (std::size_t i = 0; i < fc.n(); ++i) ASSERT_GE(next->current[i], f->current[i]);
      ASSERT_GT(std::accumulate(next->current.begin(), next->current.end(), std::size_t{0}), sum_before);
      // incremental colors equal a full recolor of the new frontier
      ASSERT_EQ(recolor(fc, Frontier{next->current, {}}).color, next->color);
      f = std::move(next);
    }
    ASSERT_LE(m.rounds, total);
    ASSERT_LE(m.comparisons, 2 * fc.n() * (fc.n() + m.states_advanced));
  }
}

TEST(OptDetect, SoundAndAgreesWithSeq) {
  for (const GenParams& p : testing::small_grid(600, 1000)) {
    const auto fc = filter(generate(p));
    const auto opt = opt_detect(fc);
    const auto seq = seq_detect(fc);
    ASSERT_EQ(opt.cut, seq.cut) << "seed " << p.seed;
    if (opt.found()) {
      ASSERT_TRUE(is_consistent_cut(fc, *opt.cut));
    }
    ASSERT_LE(opt.metrics.rounds, opt.metrics.states_advanced + 1);
    ASSERT_LE(seq.metrics.comparisons, 2 * fc.n() * (fc.n() + seq.metrics.states_advanced));
  }
}

TEST(OptDetect, ScheduleIndependent) {
  WorkerPool one(1, 1), two(2, 1), eight(8, 1);
  for (const GenParams& p : testing::small_grid(200, 500)) {
    const auto fc = filter(generate(p));
    const auto a = opt_detect(fc, one);
    const auto b = opt_detect(fc, two);
    const auto c = opt_detect(fc, eight);
    ASSERT_EQ(a.cut, b.cut);
    ASSERT_EQ(a.cut, c.cut);
    ASSERT_TRUE(a.metrics.same_counts(b.metrics));
    ASSERT_TRUE(a.metrics.same_counts(c.metrics));
  }
}

}  // namespace
}  // namespace wcp
