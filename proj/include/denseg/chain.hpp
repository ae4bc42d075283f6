#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "denseg/bounds.hpp"
#include "denseg/core.hpp"

namespace denseg {

// Operation counts used by the linearity tests and the bench command. Every
// while-loop iteration of the fast solvers increments exactly one field, so
// total() bounds the running time up to a constant.
struct WorkCounters {
  std::uint64_t chain_pushes = 0;      // starts appended to the chain
  std::uint64_t chain_pops = 0;        // tail entries discarded on append
  std::uint64_t head_advances = 0;     // head moves while picking a best start
  std::uint64_t head_skips = 0;        // head moves past starts below lo_j
  std::uint64_t table_build_steps = 0; // walk steps while building a prefix table
  std::uint64_t table_scan_steps = 0;  // start advances inside a window solve
  std::uint64_t window_scans = 0;      // linear scans locating a window's corners
  std::uint64_t ends_processed = 0;    // end indices examined by a solver loop
  std::int64_t peak_lookback = 0;      // widest live index span j - head + 1

  std::uint64_t total() const {
    return chain_pushes + chain_pops + head_advances + head_skips + table_build_steps +
           table_scan_steps + window_scans + ends_processed;
  }
};

// The candidate-start chain: a monotone deque of start indices kept so that
// after extend(.., hi_j) the live window chain[head..back] is
//
//   x, e(x)+1, e(e(x)+1)+1, ..., hi_j      where e(i) = min_prefix_end(i, hi_j - 1)
//
// i.e. each entry is one step of the longest-minimum-density-prefix
// decomposition that the quadratic best-start scan would walk through.
// best_start() then answers "largest start in [head, hi_j] maximizing
// density(start, j)" by advancing the head, in amortized O(1).
//
// Storage is append-only: popped tail slots are overwritten by later pushes
// and entries before the head are retained, so positions stay stable and
// the pop/push counters track the q - p potential exactly.
class CandidateChain {
 public:
  void reset() {
    buf_.clear();
    p_ = 0;
    q_ = -1;
  }

  bool empty() const { return q_ < p_; }
  Index head() const { return buf_[static_cast<std::size_t>(p_)]; }
  Index back() const { return buf_[static_cast<std::size_t>(q_)]; }

  // Live window accessors for tests and invariant checks.
  std::ptrdiff_t head_pos() const { return p_; }
  std::ptrdiff_t back_pos() const { return q_; }
  Index at(std::ptrdiff_t t) const { return buf_[static_cast<std::size_t>(t)]; }

  // Appends the start candidates (r_from .. r_to]; pops tail entries whose
  // prefix no longer belongs to the decomposition for the new right end.
  void extend(const PrefixSums& ps, Index r_from, Index r_to, WorkCounters& c) {
    for (Index r = r_from; r <= r_to; ++r) {
      while (q_ > p_ && compare(ps.density(at(q_ - 1), at(q_) - 1),
                                ps.density(at(q_ - 1), r - 1)) >= 0) {
        --q_;
        ++c.chain_pops;
      }
      ++q_;
      if (static_cast<std::size_t>(q_) == buf_.size()) {
        buf_.push_back(r);
      } else {
        buf_[static_cast<std::size_t>(q_)] = r;
      }
      ++c.chain_pushes;
    }
  }

  // Largest start in [head, back] maximizing density(start, j). Advances the
  // head while extending past the next chain entry cannot lower the density.
  Index best_start(const PrefixSums& ps, Index j, WorkCounters& c) {
    while (p_ < q_ && compare(ps.density(head(), at(p_ + 1) - 1), ps.density(head(), j)) <= 0) {
      ++p_;
      ++c.head_advances;
    }
    return head();
  }

  // Drops starts below lo. The caller guarantees the back entry is >= lo, so
  // the window never empties.
  void drop_starts_below(Index lo, WorkCounters& c) {
    while (p_ <= q_ && head() < lo) {
      ++p_;
      ++c.head_skips;
    }
    if (p_ > q_) throw InternalError("candidate chain emptied while skipping starts");
  }

 private:
  std::vector<Index> buf_;
  std::ptrdiff_t p_ = 0;
  std::ptrdiff_t q_ = -1;
};

namespace detail {

struct NoopObserver {
  void candidate(const Segment&, const Density&, bool /*from_window*/) {}
  void after_extend(const CandidateChain&, Index /*j*/, Index /*r_j*/) {}
  void window_call(Index /*r*/, Index /*y0*/, Index /*lo*/, Index /*y1*/) {}
};

}  // namespace detail

// Solver for the case where the upper width bound never binds
// (wmax >= total width): a plain sweep of extend + best_start over all ends
// reaching wmin. Emits one candidate per end; the best emitted candidate is
// the optimum. O(n).
template <typename Observer = detail::NoopObserver>
Result solve_min_width(const ProblemInstance& inst, Observer&& obs = Observer{},
                       WorkCounters* counters = nullptr) {
  inst.validate();
  const PrefixSums ps = PrefixSums::build(inst.seq);
  const Index n = ps.size();
  if (inst.wmax < (n > 0 ? ps.width_to(n) : 0)) {
    throw std::invalid_argument("solve_min_width requires wmax >= total width");
  }
  if (n == 0 || ps.width_to(n) < inst.wmin) throw NoFeasibleSegment();

  // With an ineffective wmax, lo_j == 1 for every end, so only hi_j matters.
  const StartBounds b = compute_bounds(ps, inst.wmin, ps.width_to(n), 1, n);
  WorkCounters local;
  WorkCounters& c = counters ? *counters : local;

  CandidateChain chain;
  std::optional<Result> best;
  Index last_r = 0;
  for (Index j = b.j0; j <= n; ++j) {
    ++c.ends_processed;
    const Index rj = b.hi_at(j);
    chain.extend(ps, last_r + 1, rj, c);
    last_r = rj;
    obs.after_extend(chain, j, rj);
    const Index ij = chain.best_start(ps, j, c);
    const Density d = ps.density(ij, j);
    obs.candidate(Segment{ij, j}, d, false);
    if (!best || candidate_improves(Segment{ij, j}, d, *best)) {
      best = Result{Segment{ij, j}, d};
    }
  }
  return *best;
}

}  // namespace denseg
