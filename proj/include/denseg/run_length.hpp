#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "denseg/core.hpp"
#include "denseg/solver.hpp"

namespace denseg {

// Uniform-width sequence (every w_i == 1) compressed as runs of equal
// values: run k covers indices (end_{k-1}, end_k] with value `value`.
struct Run {
  Value value = 0;
  Index end = 0;  // cumulative end index n_k
};

struct RunLengthSequence {
  std::vector<Run> runs;

  Index total() const { return runs.empty() ? 0 : runs.back().end; }

  void validate() const {
    Index prev = 0;
    for (const auto& run : runs) {
      if (run.end <= prev) {
        throw std::invalid_argument("run end indices must be strictly increasing");
      }
      prev = run.end;
    }
  }

  // Materializes the uniform sequence; for tests and small inputs only.
  std::vector<WeightedValue> expand() const {
    std::vector<WeightedValue> seq;
    seq.reserve(static_cast<std::size_t>(total()));
    Index prev = 0;
    for (const auto& run : runs) {
      for (Index i = prev; i < run.end; ++i) seq.push_back({run.value, 1});
      prev = run.end;
    }
    return seq;
  }
};

// Value prefix sums at run boundaries: sum_to_end[k] = sum of the first
// end_k values. Lets any A(i) be interpolated in O(1) once the run holding
// i is known.
class RunPrefixSums {
 public:
  explicit RunPrefixSums(const RunLengthSequence& rls) : runs_(&rls.runs) {
    sum_.reserve(rls.runs.size() + 1);
    sum_.push_back(0);
    Index prev = 0;
    for (const auto& run : rls.runs) {
      const Value run_sum =
          detail::checked_mul(run.end - prev, run.value, "run value sum", run.end);
      sum_.push_back(detail::checked_add(sum_.back(), run_sum, "run prefix sum", run.end));
      prev = run.end;
    }
  }

  Index size() const { return runs_->empty() ? 0 : runs_->back().end; }

  // Smallest k with end_k >= i (0-based run position); O(log m).
  std::size_t run_of(Index i) const {
    assert(1 <= i && i <= size());
    auto it = std::lower_bound(runs_->begin(), runs_->end(), i,
                               [](const Run& r, Index v) { return r.end < v; });
    return static_cast<std::size_t>(it - runs_->begin());
  }

  // Prefix value sum A(i) given the run containing i; A(0) == 0. The hint
  // may also be the run just after i when i sits on a run boundary -- the
  // interpolation term vanishes there.
  Value value_to(Index i, std::size_t run) const {
    if (i == 0) return 0;
    const Index run_first = run == 0 ? 1 : (*runs_)[run - 1].end + 1;
    assert(run < runs_->size() && run_first - 1 <= i && i <= (*runs_)[run].end);
    return sum_[run] + (i - run_first + 1) * (*runs_)[run].value;
  }
  Value value_to(Index i) const { return i == 0 ? 0 : value_to(i, run_of(i)); }

 private:
  const std::vector<Run>* runs_;
  std::vector<Value> sum_;
};

// Density of the expanded segment [i, j]; the denominator is the element
// count because widths are uniform.
inline Density run_density(const RunPrefixSums& rp, Index i, Index j) {
  assert(1 <= i && i <= j && j <= rp.size());
  return Density{rp.value_to(j) - rp.value_to(i - 1), j - i + 1};
}

namespace detail {

// Amortized-O(1) run lookup for a nondecreasing stream of indices.
class RunCursor {
 public:
  explicit RunCursor(const RunLengthSequence& rls) : runs_(&rls.runs) {}
  std::size_t advance_to(Index i, WorkCounters& c) {
    while ((*runs_)[k_].end < i) {
      ++k_;
      ++c.window_scans;
    }
    return k_;
  }

 private:
  const std::vector<Run>* runs_;
  std::size_t k_ = 0;
};

}  // namespace detail

// O(m) solve for the run-length form. The runs themselves, solved as a
// length-m weighted sequence, cover every optimum whose two boundaries are
// run-aligned; four extra candidate families per run cover the optima with
// one unaligned boundary (an optimum with both boundaries unaligned can
// always be shifted onto one of these). All candidate densities are
// evaluated in O(1) through run-boundary interpolation.
inline std::optional<Result> try_solve_runs(const RunLengthSequence& rls, Width wmin, Width wmax,
                                            WorkCounters* counters = nullptr) {
  rls.validate();
  if (wmin <= 0 || wmin > wmax) {
    throw std::invalid_argument("width bounds must satisfy 0 < wmin <= wmax");
  }
  WorkCounters local;
  WorkCounters& c = counters ? *counters : local;

  const Index n = rls.total();
  if (n < wmin) return std::nullopt;
  const auto m = rls.runs.size();
  const RunPrefixSums rp(rls);

  std::optional<Result> best;
  auto consider = [&](Index i, Index j, std::size_t run_i1, std::size_t run_j) {
    assert(wmin <= j - i + 1 && j - i + 1 <= wmax);
    const Density d{rp.value_to(j, run_j) - rp.value_to(i - 1, run_i1), j - i + 1};
    if (!best || candidate_improves(Segment{i, j}, d, *best)) {
      best = Result{Segment{i, j}, d};
    }
  };

  // Run-aligned candidates: solve the length-m sequence whose k-th element
  // is (run sum, run length) under the same width bounds, then map run
  // indices back to element indices. May be infeasible on its own even when
  // the expanded problem is feasible.
  {
    std::vector<WeightedValue> collapsed;
    collapsed.reserve(m);
    Index prev = 0;
    for (const auto& run : rls.runs) {
      collapsed.push_back(
          {detail::checked_mul(run.end - prev, run.value, "run value sum", run.end),
           run.end - prev});
      prev = run.end;
    }
    const PrefixSums ps = PrefixSums::build(collapsed);
    if (auto aligned = try_solve(ps, wmin, wmax, collapsed, detail::NoopObserver{}, &c)) {
      const Index i = (aligned->segment.i == 1 ? 0 : rls.runs[aligned->segment.i - 2].end) + 1;
      const Index j = rls.runs[aligned->segment.j - 1].end;
      // The collapsed density equals the expanded density of the mapped
      // segment, so no re-evaluation is needed.
      if (!best || candidate_improves(Segment{i, j}, aligned->density, *best)) {
        best = Result{Segment{i, j}, aligned->density};
      }
    }
  }

  // Uniform widths give closed-form start windows: the feasible starts for
  // end j are [j - wmax + 1, j - wmin + 1] clamped to >= 1.
  detail::RunCursor widest_start(rls);   // run of max(1, end_k - wmax + 1) - 1 offsets
  detail::RunCursor narrow_start(rls);   // run of end_k - wmin + 1
  detail::RunCursor narrow_end(rls);     // run of end_{k-1} + wmin
  detail::RunCursor widest_end(rls);     // run of min(n, end_{k-1} + wmax)
  Index prev_end = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const Index nk = rls.runs[k].end;
    if (nk >= wmin) {
      // Ends pinned at this run boundary, starts at both window extremes.
      const Index lo = std::max<Index>(1, nk - wmax + 1);
      const Index hi = nk - wmin + 1;
      consider(lo, nk, lo == 1 ? 0 : widest_start.advance_to(lo - 1, c), k);
      consider(hi, nk, hi == 1 ? 0 : narrow_start.advance_to(hi - 1, c), k);
    }
    if (prev_end + wmin <= n) {
      // Starts pinned just past the previous boundary, ends at both extremes.
      const Index start = prev_end + 1;
      consider(start, prev_end + wmin, k, narrow_end.advance_to(prev_end + wmin, c));
      const Index far_end = std::min(n, prev_end + wmax);
      consider(start, far_end, k, widest_end.advance_to(far_end, c));
    }
    prev_end = nk;
    ++c.ends_processed;
  }
  return best;
}

inline Result solve_runs(const RunLengthSequence& rls, Width wmin, Width wmax,
                         WorkCounters* counters = nullptr) {
  auto best = try_solve_runs(rls, wmin, wmax, counters);
  if (!best) throw NoFeasibleSegment();
  return *best;
}

}  // namespace denseg
