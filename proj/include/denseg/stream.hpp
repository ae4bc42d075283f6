#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "denseg/chain.hpp"
#include "denseg/core.hpp"
#include "denseg/window.hpp"

namespace denseg {

// Online driver: elements arrive one at a time and every candidate the batch
// solver would emit is emitted as soon as its end index has been ingested.
// The only piece of the batch loop that needs future data is the end loop of
// a catch-up window, so an open window is kept as a suspended task and
// resumed on each push until its width budget runs out. At most one task is
// ever pending: a new window only opens once the previous one's end range
// has been exhausted.
//
// After the final push, finalize() returns exactly the batch result.
class StreamSolver {
 public:
  using CandidateFn = std::function<void(const Segment&, const Density&, bool from_window)>;

  StreamSolver(Width wmin, Width wmax) : wmin_(wmin), wmax_(wmax) {
    if (wmin <= 0 || wmin > wmax) {
      throw std::invalid_argument("width bounds must satisfy 0 < wmin <= wmax");
    }
    reset_chunk(1);
  }

  // sink_ points back into this object
  StreamSolver(const StreamSolver&) = delete;
  StreamSolver& operator=(const StreamSolver&) = delete;

  void on_candidate(CandidateFn fn) { emit_ = std::move(fn); }

  Index size() const { return ps_.size(); }
  const WorkCounters& counters() const { return counters_; }
  const std::optional<Result>& running_best() const { return best_; }

  void push(const WeightedValue& pair) {
    ps_.append(pair);  // validates w > 0
    const Index j = ps_.size();

    // Resume the suspended window at end j, or retire it once the fixed
    // start boundary can no longer reach j within wmax.
    if (task_) {
      if (ps_.width(task_->r, j) <= wmax_) {
        advance_bounds(j);
        task_->step(ps_, lo_[static_cast<std::size_t>(j)], j, sink_, best_, counters_);
      } else {
        task_.reset();
      }
    }

    if (pair.w > wmax_) {
      // Oversized element: nothing feasible can cross it.
      task_.reset();
      store_bounds(j + 1, j - 1);
      reset_chunk(j + 1);
      return;
    }

    advance_bounds(j);
    if (j0_ == 0 && ps_.width(chunk_first_, j) >= wmin_) j0_ = j;
    if (j0_ == 0) return;

    ++counters_.ends_processed;
    const Index lj = lo_[static_cast<std::size_t>(j)];
    const Index rj = hi_[static_cast<std::size_t>(j)];
    if (lj > rj) return;  // no feasible start at this end

    chain_.extend(ps_, last_r_ + 1, rj, counters_);
    last_r_ = rj;
    chain_.drop_starts_below(lj, counters_);
    if (last_i_ < chain_.head()) {
      if (task_) throw InternalError("window task still pending when a new one opens");
      task_.emplace(ps_, wmin_, wmax_, chunk_first_, chain_.head(), j, counters_);
      task_->step(ps_, lj, j, sink_, best_, counters_);
    }
    const Index ij = chain_.best_start(ps_, j, counters_);
    last_i_ = ij;
    counters_.peak_lookback = std::max(counters_.peak_lookback, j - chain_.head() + 1);
    const Density d = ps_.density(ij, j);
    sink_.candidate(Segment{ij, j}, d, false);
    if (!best_ || candidate_improves(Segment{ij, j}, d, *best_)) {
      best_ = Result{Segment{ij, j}, d};
    }
  }

  // A pending window task needs no draining at end of input: every end it
  // could still serve lies beyond the final element.
  Result finalize() const {
    if (!best_) throw NoFeasibleSegment();
    return *best_;
  }

  // Exact mid-run decimal upgrades: multiply one dimension of all state by a
  // positive factor. Every density and width comparison is invariant under
  // this, so past decisions stay consistent with future ones.
  void rescale_values(Value factor) {
    ps_.rescale_values(factor);
    if (best_) best_->density.num = detail::checked_mul(best_->density.num, factor,
                                                        "candidate rescale", best_->segment.j);
  }
  void rescale_widths(Width factor) {
    ps_.rescale_widths(factor);
    wmin_ = detail::checked_mul(wmin_, factor, "wmin rescale", 0);
    wmax_ = detail::checked_mul(wmax_, factor, "wmax rescale", 0);
    if (best_) best_->density.den = detail::checked_mul(best_->density.den, factor,
                                                        "candidate rescale", best_->segment.j);
  }

 private:
  // Adapter so WindowTask and the chain share the observer shape used by the
  // batch solver.
  struct Sink {
    StreamSolver* self;
    void candidate(const Segment& s, const Density& d, bool from_window) {
      if (self->emit_) self->emit_(s, d, from_window);
    }
    void after_extend(const CandidateChain&, Index, Index) {}
    void window_call(Index, Index, Index, Index) {}
  };

  void reset_chunk(Index first) {
    chunk_first_ = first;
    j0_ = 0;
    lo_cursor_ = first;
    hi_cursor_ = first - 1;
    last_i_ = first;
    last_r_ = first - 1;
    chain_.reset();
  }

  // Same two-pointer recurrences as compute_bounds, one end at a time.
  void advance_bounds(Index j) {
    if (static_cast<std::size_t>(j) < lo_.size()) return;  // already advanced this push
    while (lo_cursor_ <= j && ps_.width(lo_cursor_, j) > wmax_) ++lo_cursor_;
    while (hi_cursor_ < j && ps_.width_to(j) - ps_.width_to(hi_cursor_) >= wmin_) ++hi_cursor_;
    store_bounds(lo_cursor_, hi_cursor_);
  }

  void store_bounds(Index lo, Index hi) {
    lo_.push_back(lo);
    hi_.push_back(hi);
  }

  PrefixSums ps_;
  Width wmin_;
  Width wmax_;
  Index chunk_first_ = 1;
  Index j0_ = 0;
  Index lo_cursor_ = 1;
  Index hi_cursor_ = 0;
  Index last_i_ = 1;
  Index last_r_ = 0;
  std::vector<Index> lo_{0};  // slot 0 unused; lo_[j] pairs with end j
  std::vector<Index> hi_{0};
  CandidateChain chain_;
  std::optional<detail::WindowTask> task_;
  std::optional<Result> best_;
  WorkCounters counters_;
  CandidateFn emit_;
  Sink sink_{this};
};

}  // namespace denseg
