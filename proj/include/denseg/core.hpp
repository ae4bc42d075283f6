#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace denseg {

// All quantities are scaled integers (see io.hpp for the decimal scaling
// rule). Supported range: |value| <= 2^31, width <= 2^31, n <= 2^31, which
// keeps every prefix sum inside int64 and every cross product inside the
// 128-bit intermediate used by density comparison. Prefix accumulation is
// overflow-checked, so inputs beyond the supported range fail loudly
// instead of corrupting the order.
using Value = std::int64_t;
using Width = std::int64_t;
using Index = std::int64_t;  // 1-based throughout the public interface

struct NoFeasibleSegment : std::runtime_error {
  NoFeasibleSegment() : std::runtime_error("no segment satisfies the width bounds") {}
  explicit NoFeasibleSegment(const std::string& what) : std::runtime_error(what) {}
};

struct OverflowError : std::runtime_error {
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a structural invariant that should be unreachable is violated.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

struct WeightedValue {
  Value a = 0;  // score contribution
  Width w = 1;  // positive width

  friend bool operator==(const WeightedValue&, const WeightedValue&) = default;
};

// Closed segment [i, j] of the input sequence, 1-based.
struct Segment {
  Index i = 0;
  Index j = 0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

// Exact rational density num/den with den > 0. Two densities compare by
// cross multiplication; int64 x int64 always fits in __int128, so the
// comparison itself cannot overflow.
struct Density {
  Value num = 0;
  Width den = 1;

  friend std::weak_ordering operator<=>(const Density& x, const Density& y) {
    assert(x.den > 0 && y.den > 0);
    const __int128 lhs = static_cast<__int128>(x.num) * y.den;
    const __int128 rhs = static_cast<__int128>(y.num) * x.den;
    if (lhs < rhs) return std::weak_ordering::less;
    if (lhs > rhs) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  friend bool operator==(const Density& x, const Density& y) {
    return (x <=> y) == std::weak_ordering::equivalent;
  }
};

// -1 / 0 / +1 sign of x - y under the exact rational order.
inline int compare(const Density& x, const Density& y) {
  const auto o = x <=> y;
  return o < 0 ? -1 : (o > 0 ? 1 : 0);
}

namespace detail {

inline Value checked_add(Value x, Value y, const char* what, Index at) {
  Value out;
  if (__builtin_add_overflow(x, y, &out)) {
    throw OverflowError(std::string(what) + " overflows 64-bit accumulator at index " +
                        std::to_string(at));
  }
  return out;
}

inline Value checked_mul(Value x, Value y, const char* what, Index at) {
  Value out;
  if (__builtin_mul_overflow(x, y, &out)) {
    throw OverflowError(std::string(what) + " overflows 64-bit accumulator at index " +
                        std::to_string(at));
  }
  return out;
}

}  // namespace detail

// Cumulative sums with a leading zero: value_prefix[j] = a_1 + ... + a_j and
// width_prefix[j] = w_1 + ... + w_j. width_prefix is strictly increasing,
// which makes every per-segment width positive.
class PrefixSums {
 public:
  PrefixSums() = default;

  static PrefixSums build(std::span<const WeightedValue> seq) {
    PrefixSums ps;
    ps.a_.reserve(seq.size() + 1);
    ps.w_.reserve(seq.size() + 1);
    for (const auto& pair : seq) ps.append(pair);
    return ps;
  }

  // Extends the sums by one element; rejects nonpositive widths.
  void append(const WeightedValue& pair) {
    const Index at = size() + 1;
    if (pair.w <= 0) {
      throw std::invalid_argument("width must be positive at index " + std::to_string(at));
    }
    a_.push_back(detail::checked_add(a_.back(), pair.a, "value prefix sum", at));
    w_.push_back(detail::checked_add(w_.back(), pair.w, "width prefix sum", at));
  }

  Index size() const { return static_cast<Index>(a_.size()) - 1; }

  // Prefix accessors, valid for 0 <= j <= n.
  Value value_to(Index j) const { return a_[static_cast<std::size_t>(j)]; }
  Width width_to(Index j) const { return w_[static_cast<std::size_t>(j)]; }

  Value value_sum(Index i, Index j) const {
    assert(1 <= i && i <= j && j <= size());
    return a_[static_cast<std::size_t>(j)] - a_[static_cast<std::size_t>(i - 1)];
  }

  Width width(Index i, Index j) const {
    assert(1 <= i && i <= j && j <= size());
    return w_[static_cast<std::size_t>(j)] - w_[static_cast<std::size_t>(i - 1)];
  }

  Density density(Index i, Index j) const { return Density{value_sum(i, j), width(i, j)}; }

  // Multiplies every stored value (or width, and the caller's bounds with
  // it) by a positive factor. Used when a streaming source upgrades its
  // decimal scale mid-run; all comparisons are invariant under this.
  void rescale_values(Value factor) {
    for (auto& v : a_) v = detail::checked_mul(v, factor, "value prefix rescale", 0);
  }
  void rescale_widths(Width factor) {
    for (auto& v : w_) v = detail::checked_mul(v, factor, "width prefix rescale", 0);
  }

 private:
  std::vector<Value> a_{0};
  std::vector<Width> w_{0};
};

struct ProblemInstance {
  std::vector<WeightedValue> seq;
  Width wmin = 1;
  Width wmax = 1;

  void validate() const {
    if (wmin <= 0 || wmin > wmax) {
      throw std::invalid_argument("width bounds must satisfy 0 < wmin <= wmax");
    }
  }
};

// A solved segment together with its exact density.
struct Result {
  Segment segment;
  Density density;
};

// Total order used to reduce candidate streams to one answer: higher density
// wins, ties go to the larger end index, then the larger start index.
inline bool candidate_improves(const Segment& seg, const Density& den, const Result& best) {
  const int c = compare(den, best.density);
  if (c != 0) return c > 0;
  if (seg.j != best.segment.j) return seg.j > best.segment.j;
  return seg.i > best.segment.i;
}

}  // namespace denseg
