#include <gtest/gtest.h>

#include <random>

#include "denseg/brute.hpp"
#include "testutil.hpp"

using namespace denseg;

TEST(BruteSolve, UniformExample) {
  // five feasible segments: (1,2)=1, (1,3)=2/3, (2,3)=1/2, (2,4)=1/3, (3,4)=0
  const auto inst = testutil::uniform_instance({1, 1, 0, 0}, 2, 3);
  const Result r = brute::solve(inst);
  EXPECT_EQ(r.segment, (Segment{1, 2}));
  EXPECT_EQ(r.density, (Density{2, 2}));
}

TEST(BruteSolve, SingleElementWins) {
  const auto inst = testutil::uniform_instance({2, 0, 4}, 1, 3);
  const Result r = brute::solve(inst);
  EXPECT_EQ(r.segment, (Segment{3, 3}));
  EXPECT_EQ(r.density, (Density{4, 1}));
}

TEST(BruteSolve, OneSegmentOnly) {
  const ProblemInstance inst{{{5, 1}}, 1, 1};
  const Result r = brute::solve(inst);
  EXPECT_EQ(r.segment, (Segment{1, 1}));
  EXPECT_EQ(r.density, (Density{5, 1}));
}

TEST(BruteSolve, ThrowsWhenInfeasible) {
  EXPECT_THROW(brute::solve(testutil::uniform_instance({1, 1}, 3, 3)), NoFeasibleSegment);
  // total width reaches wmin but every width jumps across the band
  const ProblemInstance banded{{{0, 3}, {0, 3}}, 4, 5};
  EXPECT_THROW(brute::solve(banded), NoFeasibleSegment);
}

TEST(BruteSolve, TieBreaksToLargestEndThenStart) {
  // all-zero sequence: every feasible segment ties at density 0
  const auto inst = testutil::uniform_instance({0, 0, 0}, 1, 2);
  const Result r = brute::solve(inst);
  EXPECT_EQ(r.segment, (Segment{3, 3}));
}

TEST(MinPrefixEnd, ScanExamples) {
  const auto inst = testutil::uniform_instance({3, 1, 2}, 1, 3);
  const PrefixSums ps = PrefixSums::build(inst.seq);
  EXPECT_EQ(brute::min_prefix_end(ps, 1, 2), 2);  // d(1,1)=3, d(1,2)=2
  EXPECT_EQ(brute::min_prefix_end(ps, 1, 3), 3);  // d(1,3)=2 ties; larger index wins
  EXPECT_EQ(brute::min_prefix_end(ps, 2, 2), 2);
  EXPECT_EQ(brute::min_prefix_end(ps, 3, 3), 3);
}

TEST(BestStart, ScanExamples) {
  const auto abc = testutil::uniform_instance({2, 0, 4}, 1, 3);
  const PrefixSums ps = PrefixSums::build(abc.seq);
  EXPECT_EQ(brute::best_start(ps, 1, 3, 3), 3);  // d(1,3)=2, d(2,3)=2, d(3,3)=4
  const auto ones = testutil::uniform_instance({1, 1}, 1, 2);
  const PrefixSums ps2 = PrefixSums::build(ones.seq);
  EXPECT_EQ(brute::best_start(ps2, 1, 2, 2), 2);  // tie at density 1; larger start wins
  EXPECT_EQ(brute::best_start(ps2, 1, 1, 2), 1);
}

// Without an upper width bound, some optimal segment is shorter than twice
// the minimum width; capping the enumeration there must not lose density.
TEST(BruteSolve, ShortOptimumExistsWithoutUpperBound) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    std::uniform_int_distribution<Index> nv(1, 24);
    const Index n = nv(rng);
    std::vector<Value> values;
    std::uniform_int_distribution<Value> av(-9, 9);
    for (Index i = 0; i < n; ++i) values.push_back(av(rng));
    std::uniform_int_distribution<Width> wv(1, n);
    const Width wmin = wv(rng);
    const auto inst = testutil::uniform_instance(values, wmin, n);
    const PrefixSums ps = PrefixSums::build(inst.seq);
    const auto full = brute::try_solve(ps, wmin, n);
    const auto capped = brute::solve_capped(ps, wmin, n, 2 * wmin - 1);
    ASSERT_TRUE(full.has_value());
    ASSERT_TRUE(capped.has_value());
    EXPECT_EQ(compare(full->density, capped->density), 0);
  }
}
