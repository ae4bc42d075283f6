#pragma once

#include <algorithm>
#include <vector>

#include "denseg/bounds.hpp"
#include "denseg/chain.hpp"
#include "denseg/core.hpp"

namespace denseg {

// Precomputed longest-minimum-density-prefix ends for a fixed scan limit:
// at(i) == brute::min_prefix_end(i, hi) for every i in [lo, hi]. Built by a
// backward sweep that walks the already-computed chain, amortized
// O(hi - lo + 1).
class MinPrefixTable {
 public:
  MinPrefixTable() = default;

  MinPrefixTable(const PrefixSums& ps, Index lo, Index hi, WorkCounters& c) : lo_(lo), hi_(hi) {
    if (hi < lo) return;
    end_.resize(static_cast<std::size_t>(hi - lo + 1));
    slot(hi) = hi;
    for (Index s = hi - 1; s >= lo; --s) {
      Index t = s;
      while (t < hi && compare(ps.density(s, t), ps.density(s, slot(t + 1))) >= 0) {
        t = slot(t + 1);
        ++c.table_build_steps;
      }
      slot(s) = t;
    }
  }

  bool empty() const { return end_.empty(); }
  Index lo() const { return lo_; }
  Index hi() const { return hi_; }
  Index at(Index i) const {
    assert(lo_ <= i && i <= hi_);
    return end_[static_cast<std::size_t>(i - lo_)];
  }

 private:
  Index& slot(Index i) { return end_[static_cast<std::size_t>(i - lo_)]; }

  Index lo_ = 1;
  Index hi_ = 0;
  std::vector<Index> end_;
};

// Largest start in [from, r] maximizing density(start, y), answered with the
// precomputed table (which must cover scan limit r - 1). The loop never runs
// when from == r, which keeps the degenerate single-start window total.
inline Index table_best_start(const PrefixSums& ps, const MinPrefixTable& table, Index from,
                              Index r, Index y, WorkCounters& c) {
  Index x = from;
  while (x < r && compare(ps.density(x, table.at(x)), ps.density(x, y)) <= 0) {
    x = table.at(x) + 1;
    ++c.table_scan_steps;
  }
  return x;
}

namespace detail {

// One catch-up window: starts in [lo, r], ends in [y0, y1], solved left to
// right with a nondecreasing start cursor. Created by the general solver
// when its chain head jumps past starts that later ends may still need.
// The end loop is split out so the streaming driver can suspend it.
struct WindowTask {
  Index r = 0;       // fixed right boundary of the start range
  Index y0 = 0;      // first end
  Index lo = 0;      // smallest start with width(lo, y0) <= wmax
  Index x_prev = 0;  // start emitted for the previous end
  MinPrefixTable table;

  WindowTask(const PrefixSums& ps, Width wmin, Width wmax, Index first, Index r_in, Index y0_in,
             WorkCounters& c)
      : r(r_in), y0(y0_in) {
    if (ps.width(r, y0) < wmin) {
      throw InternalError("window solve requires width(r, y0) >= wmin");
    }
    lo = r;
    while (lo > first && ps.width(lo - 1, y0) <= wmax) {
      --lo;
      ++c.window_scans;
    }
    table = MinPrefixTable(ps, lo, r - 1, c);
    x_prev = lo;
  }

  // Processes one end; the caller guarantees width(r, y) <= wmax and passes
  // lo_y, the smallest feasible start for end y.
  template <typename Observer>
  void step(const PrefixSums& ps, Index lo_y, Index y, Observer& obs,
            std::optional<Result>& best, WorkCounters& c) {
    const Index from = std::max({x_prev, lo_y, lo});
    const Index x = table_best_start(ps, table, from, r, y, c);
    x_prev = x;
    c.peak_lookback = std::max(c.peak_lookback, y - lo + 1);
    const Density d = ps.density(x, y);
    obs.candidate(Segment{x, y}, d, true);
    if (!best || candidate_improves(Segment{x, y}, d, *best)) {
      best = Result{Segment{x, y}, d};
    }
  }
};

}  // namespace detail

// Batch window solve over ends [y0, y1] where y1 is the largest end in
// [y0, last] with width(r, y1) <= wmax. Requires width(r, y0) >= wmin.
// O(r - lo + y1 - y0 + 1).
template <typename Observer>
void solve_window(const PrefixSums& ps, Width wmin, Width wmax, const StartBounds& b, Index r,
                  Index y0, Observer& obs, std::optional<Result>& best, WorkCounters& c) {
  assert(ps.width(r, y0) <= wmax);  // r is itself a feasible start for y0
  detail::WindowTask task(ps, wmin, wmax, b.first, r, y0, c);
  Index y1 = y0;
  while (y1 < b.last && ps.width(r, y1 + 1) <= wmax) {
    ++y1;
    ++c.window_scans;
  }
  obs.window_call(r, y0, task.lo, y1);
  for (Index y = y0; y <= y1; ++y) {
    assert(!b.empty_at(y));  // the fixed boundary r itself is feasible here
    task.step(ps, b.lo_at(y), y, obs, best, c);
  }
}

}  // namespace denseg
