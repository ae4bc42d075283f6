#pragma once

#include <algorithm>
#include <optional>

#include "denseg/bounds.hpp"
#include "denseg/chain.hpp"
#include "denseg/core.hpp"
#include "denseg/window.hpp"

namespace denseg {

namespace detail {

// Core loop over one oversized-free chunk. For each end j with a nonempty
// start window: extend the chain to hi_j, skip chain starts below lo_j, and
// if the skip jumped past the previously emitted start, solve a catch-up
// window so no optimal start is lost. The best candidate over all ends and
// all window emissions is the chunk optimum.
template <typename Observer>
void run_chunk(const PrefixSums& ps, Width wmin, Width wmax, const StartBounds& b, Observer& obs,
               std::optional<Result>& best, WorkCounters& c) {
  CandidateChain chain;
  Index last_i = b.first;
  Index last_r = b.first - 1;
  for (Index j = b.j0; j <= b.last; ++j) {
    ++c.ends_processed;
    if (b.empty_at(j)) continue;  // widths jump across [wmin, wmax] at this end
    const Index lj = b.lo_at(j);
    const Index rj = b.hi_at(j);
    chain.extend(ps, last_r + 1, rj, c);
    last_r = rj;
    obs.after_extend(chain, j, rj);
    chain.drop_starts_below(lj, c);
    if (last_i < chain.head()) {
      // Starts in [last_i, head - 1] were never answered for ends >= j.
      solve_window(ps, wmin, wmax, b, chain.head(), j, obs, best, c);
    }
    const Index ij = chain.best_start(ps, j, c);
    last_i = ij;
    c.peak_lookback = std::max(c.peak_lookback, j - chain.head() + 1);
    const Density d = ps.density(ij, j);
    obs.candidate(Segment{ij, j}, d, false);
    if (!best || candidate_improves(Segment{ij, j}, d, *best)) {
      best = Result{Segment{ij, j}, d};
    }
  }
}

}  // namespace detail

// Linear-time maximum-density segment solve. Returns the best feasible
// segment, or nullopt when no segment fits the width bounds.
template <typename Observer = detail::NoopObserver>
std::optional<Result> try_solve(const PrefixSums& ps, Width wmin, Width wmax,
                                std::span<const WeightedValue> seq, Observer&& obs = Observer{},
                                WorkCounters* counters = nullptr) {
  WorkCounters local;
  WorkCounters& c = counters ? *counters : local;
  std::optional<Result> best;
  for (const auto& [first, last] : split_chunks(seq, wmax)) {
    if (ps.width(first, last) < wmin) continue;  // chunk too narrow to matter
    const StartBounds b = compute_bounds(ps, wmin, wmax, first, last);
    detail::run_chunk(ps, wmin, wmax, b, obs, best, c);
  }
  return best;
}

template <typename Observer = detail::NoopObserver>
std::optional<Result> try_solve(const ProblemInstance& inst, Observer&& obs = Observer{},
                                WorkCounters* counters = nullptr) {
  inst.validate();
  const PrefixSums ps = PrefixSums::build(inst.seq);
  return try_solve(ps, inst.wmin, inst.wmax, inst.seq, std::forward<Observer>(obs), counters);
}

template <typename Observer = detail::NoopObserver>
Result solve(const ProblemInstance& inst, Observer&& obs = Observer{},
             WorkCounters* counters = nullptr) {
  auto best = try_solve(inst, std::forward<Observer>(obs), counters);
  if (!best) throw NoFeasibleSegment();
  return *best;
}

}  // namespace denseg
