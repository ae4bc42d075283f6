#pragma once

#include <optional>

#include "denseg/core.hpp"

// Reference implementations by exhaustive scan. These are the ground truth
// the fast solvers are tested against and what the CLI `verify` command
// runs; they make no attempt to be fast.
namespace denseg::brute {

// Largest z in [x, y] minimizing density(x, z) -- the end of the longest
// minimum-density prefix of the segment starting at x.
inline Index min_prefix_end(const PrefixSums& ps, Index x, Index y) {
  assert(1 <= x && x <= y && y <= ps.size());
  Index best = x;
  Density best_d = ps.density(x, x);
  for (Index z = x + 1; z <= y; ++z) {
    const Density d = ps.density(x, z);
    if (compare(d, best_d) <= 0) {  // ties keep the larger index
      best = z;
      best_d = d;
    }
  }
  return best;
}

// Largest i in [lo, hi] maximizing density(i, j).
inline Index best_start(const PrefixSums& ps, Index lo, Index hi, Index j) {
  assert(1 <= lo && lo <= hi && hi <= j && j <= ps.size());
  Index best = lo;
  Density best_d = ps.density(lo, j);
  for (Index i = lo + 1; i <= hi; ++i) {
    const Density d = ps.density(i, j);
    if (compare(d, best_d) >= 0) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

// Enumerates every feasible segment whose width also stays within
// [wmin, width_cap]; ties break to the larger end, then the larger start.
inline std::optional<Result> solve_capped(const PrefixSums& ps, Width wmin, Width wmax,
                                          Width width_cap) {
  std::optional<Result> best;
  const Index n = ps.size();
  for (Index j = 1; j <= n; ++j) {
    for (Index i = j; i >= 1; --i) {
      const Width w = ps.width(i, j);
      if (w < wmin) continue;
      if (w > wmax || w > width_cap) break;  // widths grow as i decreases
      const Density d = ps.density(i, j);
      if (!best || candidate_improves(Segment{i, j}, d, *best)) {
        best = Result{Segment{i, j}, d};
      }
    }
  }
  return best;
}

inline std::optional<Result> try_solve(const PrefixSums& ps, Width wmin, Width wmax) {
  return solve_capped(ps, wmin, wmax, wmax);
}

inline Result solve(const ProblemInstance& inst) {
  inst.validate();
  const PrefixSums ps = PrefixSums::build(inst.seq);
  auto best = try_solve(ps, inst.wmin, inst.wmax);
  if (!best) throw NoFeasibleSegment();
  return *best;
}

}  // namespace denseg::brute
