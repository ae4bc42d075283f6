#pragma once

#include <utility>
#include <vector>

#include "denseg/core.hpp"

namespace denseg {

// Per-end-index start windows for the elements [first, last] treated as an
// isolated subsequence. For each end j >= j0 the feasible starts are exactly
// [lo_at(j), hi_at(j)]:
//
//   lo_at(j)  smallest i with width(i, j) <= wmax
//   hi_at(j)  largest  i with width(i, j) >= wmin
//
// Both cursors are nondecreasing in j. The window can be empty (lo > hi)
// when consecutive widths jump across the [wmin, wmax] band; such ends have
// no feasible start and are skipped by the solvers.
struct StartBounds {
  Index first = 1;
  Index last = 0;
  Index j0 = 1;  // smallest j with width(first, j) >= wmin; last + 1 if none
  std::vector<Index> lo;
  std::vector<Index> hi;

  Index lo_at(Index j) const { return lo[static_cast<std::size_t>(j - first)]; }
  Index hi_at(Index j) const { return hi[static_cast<std::size_t>(j - first)]; }
  bool empty_at(Index j) const { return lo_at(j) > hi_at(j); }
  bool feasible(Index i, Index j) const {
    return j >= j0 && lo_at(j) <= i && i <= hi_at(j);
  }
};

// Two-pointer sweep over [first, last]; O(last - first + 1).
inline StartBounds compute_bounds(const PrefixSums& ps, Width wmin, Width wmax, Index first,
                                  Index last) {
  StartBounds b;
  b.first = first;
  b.last = last;
  b.j0 = last + 1;
  if (first > last) return b;
  const std::size_t count = static_cast<std::size_t>(last - first + 1);
  b.lo.resize(count);
  b.hi.resize(count);

  Index lo = first;       // smallest start with width(lo, j) <= wmax
  Index hi = first - 1;   // largest start with width(hi, j) >= wmin
  for (Index j = first; j <= last; ++j) {
    while (lo <= j && ps.width(lo, j) > wmax) ++lo;
    while (hi < j && ps.width_to(j) - ps.width_to(hi) >= wmin) ++hi;
    if (b.j0 > last && ps.width(first, j) >= wmin) b.j0 = j;
    b.lo[static_cast<std::size_t>(j - first)] = lo;
    b.hi[static_cast<std::size_t>(j - first)] = hi;
  }
  return b;
}

// Whole-sequence bounds; rejects inputs whose total width cannot reach wmin.
inline StartBounds compute_bounds(const PrefixSums& ps, Width wmin, Width wmax) {
  const Index n = ps.size();
  if (n == 0 || ps.width_to(n) < wmin) {
    throw NoFeasibleSegment("total width is below the minimum width bound");
  }
  return compute_bounds(ps, wmin, wmax, 1, n);
}

// Maximal index ranges free of oversized elements (w > wmax). An oversized
// element cannot lie inside any feasible segment, so each range can be
// solved independently.
inline std::vector<std::pair<Index, Index>> split_chunks(std::span<const WeightedValue> seq,
                                                         Width wmax) {
  std::vector<std::pair<Index, Index>> chunks;
  const Index n = static_cast<Index>(seq.size());
  Index begin = 1;
  for (Index i = 1; i <= n; ++i) {
    if (seq[static_cast<std::size_t>(i - 1)].w > wmax) {
      if (begin <= i - 1) chunks.emplace_back(begin, i - 1);
      begin = i + 1;
    }
  }
  if (begin <= n) chunks.emplace_back(begin, n);
  return chunks;
}

}  // namespace denseg
