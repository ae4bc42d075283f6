#pragma once

#include <gtest/gtest.h>

#include <optional>
#include <random>
#include <vector>

#include "denseg/brute.hpp"
#include "denseg/chain.hpp"
#include "denseg/core.hpp"

namespace denseg::testutil {

// Exact fraction comparison by continued-fraction descent, independent of
// the 128-bit cross-multiplication path it is used to check. b and d must be
// positive.
inline int compare_fractions_euclid(Value a, Width b, Value c, Width d) {
  auto floordiv = [](Value x, Value y) {
    Value q = x / y;
    if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
    return q;
  };
  const Value qa = floordiv(a, b);
  const Value qc = floordiv(c, d);
  if (qa != qc) return qa < qc ? -1 : 1;
  const Value ra = a - qa * b;
  const Value rc = c - qc * d;
  if (ra == 0 && rc == 0) return 0;
  if (ra == 0) return -1;
  if (rc == 0) return 1;
  // a/b vs c/d now reduces to ra/b vs rc/d with both sides in (0,1).
  // Inverting both flips the order, so comparing the inverses with the
  // operands swapped preserves it: ra/b < rc/d  <=>  d/rc < b/ra.
  return compare_fractions_euclid(d, rc, b, ra);
}

inline std::vector<WeightedValue> random_sequence(std::mt19937_64& rng, Index n, Value max_abs_a,
                                                  Width max_w) {
  std::uniform_int_distribution<Value> av(-max_abs_a, max_abs_a);
  std::uniform_int_distribution<Width> wv(1, max_w);
  std::vector<WeightedValue> seq;
  seq.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) seq.push_back({av(rng), wv(rng)});
  return seq;
}

inline ProblemInstance random_instance(std::mt19937_64& rng, Index max_n, Value max_abs_a,
                                       Width max_w) {
  std::uniform_int_distribution<Index> nv(1, max_n);
  const Index n = nv(rng);
  ProblemInstance inst;
  inst.seq = random_sequence(rng, n, max_abs_a, max_w);
  Width total = 0;
  for (const auto& p : inst.seq) total += p.w;
  std::uniform_int_distribution<Width> lo(1, total);
  inst.wmin = lo(rng);
  std::uniform_int_distribution<Width> hi(inst.wmin, total);
  inst.wmax = hi(rng);
  if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) inst.wmax = total;  // ineffective
  return inst;
}

// Draws instances until one has a feasible segment; returns it with the
// brute-force optimum.
inline std::pair<ProblemInstance, Result> random_feasible_instance(std::mt19937_64& rng,
                                                                   Index max_n, Value max_abs_a,
                                                                   Width max_w) {
  for (;;) {
    ProblemInstance inst = random_instance(rng, max_n, max_abs_a, max_w);
    const PrefixSums ps = PrefixSums::build(inst.seq);
    if (auto best = brute::try_solve(ps, inst.wmin, inst.wmax)) {
      return {std::move(inst), *best};
    }
  }
}

// Checks the live chain window against the longest-minimum-density-prefix
// decomposition computed by the scan oracle: back entry is r_j and each
// entry is min_prefix_end(previous, r_j - 1) + 1.
inline ::testing::AssertionResult chain_matches_scan(const PrefixSums& ps,
                                                     const CandidateChain& chain, Index rj) {
  if (chain.empty()) return ::testing::AssertionFailure() << "chain is empty";
  if (chain.back() != rj) {
    return ::testing::AssertionFailure()
           << "back entry " << chain.back() << " != r_j " << rj;
  }
  for (auto t = chain.head_pos() + 1; t <= chain.back_pos(); ++t) {
    const Index prev = chain.at(t - 1);
    const Index expected = brute::min_prefix_end(ps, prev, rj - 1) + 1;
    if (chain.at(t) != expected) {
      return ::testing::AssertionFailure()
             << "entry " << chain.at(t) << " after " << prev << " should be " << expected
             << " for r_j " << rj;
    }
  }
  return ::testing::AssertionSuccess();
}

inline ProblemInstance uniform_instance(std::vector<Value> values, Width wmin, Width wmax) {
  ProblemInstance inst;
  for (const Value v : values) inst.seq.push_back({v, 1});
  inst.wmin = wmin;
  inst.wmax = wmax;
  return inst;
}

}  // namespace denseg::testutil
