#include <gtest/gtest.h>

#include <random>

#include "denseg/chain.hpp"
#include "testutil.hpp"

using namespace denseg;

namespace {

// Runs the min-width-only sweep manually, checking the chain against the
// scan oracle after every extension.
void sweep_and_check(const std::vector<Value>& values, Width wmin) {
  const auto inst = testutil::uniform_instance(values, wmin, static_cast<Width>(values.size()));
  const PrefixSums ps = PrefixSums::build(inst.seq);
  const StartBounds b = compute_bounds(ps, wmin, ps.width_to(ps.size()), 1, ps.size());
  WorkCounters c;
  CandidateChain chain;
  Index last_r = 0;
  for (Index j = b.j0; j <= ps.size(); ++j) {
    chain.extend(ps, last_r + 1, b.hi_at(j), c);
    last_r = b.hi_at(j);
    EXPECT_TRUE(testutil::chain_matches_scan(ps, chain, last_r));
    chain.best_start(ps, j, c);
  }
}

}  // namespace

TEST(Chain, MatchesScanDecomposition) {
  sweep_and_check({3, 1, 2}, 1);
  sweep_and_check({1, -2, 4, 0, 3}, 2);
}

TEST(Chain, FirstExtendPushesAllStarts) {
  const auto inst = testutil::uniform_instance({5, -1, 2, 0}, 3, 4);
  const PrefixSums ps = PrefixSums::build(inst.seq);
  const StartBounds b = compute_bounds(ps, 3, ps.width_to(4), 1, 4);
  ASSERT_EQ(b.j0, 3);
  WorkCounters c;
  CandidateChain chain;
  chain.extend(ps, 1, b.hi_at(b.j0), c);
  EXPECT_FALSE(chain.empty());
  EXPECT_EQ(chain.back(), b.hi_at(b.j0));
  EXPECT_EQ(chain.head(), 1);
}

TEST(Chain, IncreasingValuesNeverPop) {
  // every prefix extension raises the density, so each new start survives
  const auto inst = testutil::uniform_instance({1, 2, 3, 4, 5}, 1, 5);
  const PrefixSums ps = PrefixSums::build(inst.seq);
  WorkCounters c;
  CandidateChain chain;
  for (Index r = 1; r <= 5; ++r) {
    chain.extend(ps, r, r, c);
    EXPECT_EQ(c.chain_pops, 0u);
    EXPECT_EQ(chain.back_pos() - chain.head_pos(), r - 1);  // window grows each step
  }
}

TEST(Chain, DecreasingValuesPopToMinimalChain) {
  // decreasing values keep extending the minimum-density prefix, so each
  // new start evicts the previous one and the window stays at two entries
  const auto inst = testutil::uniform_instance({3, 2, 1}, 1, 3);
  const PrefixSums ps = PrefixSums::build(inst.seq);
  WorkCounters c;
  CandidateChain chain;
  for (Index r = 1; r <= 3; ++r) chain.extend(ps, r, r, c);
  EXPECT_EQ(c.chain_pops, 1u);  // entry 2 evicted when 3 arrived
  EXPECT_EQ(chain.head_pos(), 0);
  EXPECT_EQ(chain.back_pos(), 1);
  EXPECT_EQ(chain.head(), 1);
  EXPECT_EQ(chain.back(), 3);
  EXPECT_TRUE(testutil::chain_matches_scan(ps, chain, 3));
}

TEST(Chain, BestStartAdvancesHead) {
  const auto inst = testutil::uniform_instance({0, 9}, 1, 2);
  const PrefixSums ps = PrefixSums::build(inst.seq);
  WorkCounters c;
  CandidateChain chain;
  chain.extend(ps, 1, 2, c);
  EXPECT_EQ(chain.best_start(ps, 2, c), 2);  // d(1,1)=0 <= d(1,2)
  EXPECT_EQ(c.head_advances, 1u);
}

TEST(Chain, BestStartSingleEntryReturnsImmediately) {
  const auto inst = testutil::uniform_instance({7}, 1, 1);
  const PrefixSums ps = PrefixSums::build(inst.seq);
  WorkCounters c;
  CandidateChain chain;
  chain.extend(ps, 1, 1, c);
  EXPECT_EQ(chain.best_start(ps, 1, c), 1);
  EXPECT_EQ(c.head_advances, 0u);
}

TEST(Chain, BestStartEqualsScan) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 300; ++t) {
    std::uniform_int_distribution<Index> nv(1, 20);
    const Index n = nv(rng);
    const auto seq = testutil::random_sequence(rng, n, 9, 1);
    const PrefixSums ps = PrefixSums::build(seq);
    WorkCounters c;
    CandidateChain chain;
    Index last = 0;
    for (Index j = 1; j <= n; ++j) {
      chain.extend(ps, last + 1, j, c);
      last = j;
      const Index head_before = chain.head();
      const Index got = chain.best_start(ps, j, c);
      EXPECT_EQ(got, brute::best_start(ps, head_before, j, j));
    }
  }
}

TEST(SolveMinWidth, KnownExamples) {
  const Result r = solve_min_width(testutil::uniform_instance({1, 1, 0, 0}, 2, 4));
  EXPECT_EQ(r.density, (Density{2, 2}));
  EXPECT_EQ(r.segment, (Segment{1, 2}));

  const Result single = solve_min_width(ProblemInstance{{{5, 3}}, 3, 3});
  EXPECT_EQ(single.segment, (Segment{1, 1}));
}

TEST(SolveMinWidth, RequiresIneffectiveUpperBound) {
  EXPECT_THROW(solve_min_width(testutil::uniform_instance({1, 1, 1}, 1, 2)),
               std::invalid_argument);
}

TEST(SolveMinWidth, ThrowsWhenTooNarrow) {
  EXPECT_THROW(solve_min_width(testutil::uniform_instance({1}, 2, 5)), NoFeasibleSegment);
}

TEST(SolveMinWidth, MatchesBruteForceOnRandomInstances) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 500; ++t) {
    ProblemInstance inst = testutil::random_instance(rng, 64, 9, 4);
    const PrefixSums ps = PrefixSums::build(inst.seq);
    inst.wmax = ps.width_to(ps.size());
    if (inst.wmin > inst.wmax) inst.wmin = inst.wmax;
    const Result fast = solve_min_width(inst);
    const Result slow = brute::solve(inst);
    EXPECT_EQ(compare(fast.density, slow.density), 0);
  }
}

TEST(SolveMinWidth, PopCountBoundedByPushes) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    ProblemInstance inst = testutil::random_instance(rng, 128, 9, 4);
    const PrefixSums ps = PrefixSums::build(inst.seq);
    inst.wmax = ps.width_to(ps.size());
    if (inst.wmin > inst.wmax) inst.wmin = inst.wmax;
    WorkCounters c;
    solve_min_width(inst, detail::NoopObserver{}, &c);
    EXPECT_LE(c.chain_pops, c.chain_pushes);
    EXPECT_LE(c.chain_pushes, static_cast<std::uint64_t>(inst.seq.size()));
    EXPECT_LE(c.head_advances, c.chain_pushes);
  }
}

// The per-end emissions are "best start no earlier than the previous one";
// their running maximum is the global optimum even though individual ends
// may be served suboptimal starts.
TEST(SolveMinWidth, EmissionsCoverOptimum) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 200; ++t) {
    ProblemInstance inst = testutil::random_instance(rng, 32, 9, 3);
    const PrefixSums ps = PrefixSums::build(inst.seq);
    inst.wmax = ps.width_to(ps.size());
    if (inst.wmin > inst.wmax) inst.wmin = inst.wmax;

    struct Recorder : detail::NoopObserver {
      std::vector<std::pair<Segment, Density>> emitted;
      void candidate(const Segment& s, const Density& d, bool) { emitted.emplace_back(s, d); }
    } rec;
    const Result fast = solve_min_width(inst, rec);
    const Result slow = brute::solve(inst);
    EXPECT_EQ(compare(fast.density, slow.density), 0);
    Index prev = 0;
    bool optimum_seen = false;
    for (const auto& [seg, den] : rec.emitted) {
      EXPECT_GE(seg.i, prev);  // starts never move left
      prev = seg.i;
      if (compare(den, slow.density) == 0) optimum_seen = true;
    }
    EXPECT_TRUE(optimum_seen);
  }
}
