#pragma once

#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "denseg/core.hpp"
#include "denseg/run_length.hpp"

namespace denseg::io {

struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(int line_in, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_in) + ": " + what), line(line_in) {}
  ParseError(int line_in, int column_in, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_in) + ", column " +
                           std::to_string(column_in) + ": " + what),
        line(line_in),
        column(column_in) {}
};

// Numbers are plain decimals with at most six fractional digits. A dimension
// (values or widths) that contains any fractional digit anywhere is scaled
// by a flat 10^6 so every quantity stays an exact integer; integer-only
// dimensions keep scale 1.
inline constexpr int kMaxFracDigits = 6;
inline constexpr Value kFracScale = 1'000'000;

struct Decimal {
  Value mantissa = 0;   // digits with the point removed
  int frac_digits = 0;  // value == mantissa / 10^frac_digits
};

inline Decimal parse_decimal(std::string_view token, int line) {
  Decimal d;
  std::size_t pos = 0;
  bool negative = false;
  if (pos < token.size() && (token[pos] == '+' || token[pos] == '-')) {
    negative = token[pos] == '-';
    ++pos;
  }
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < token.size(); ++pos) {
    const char ch = token[pos];
    if (ch == '.') {
      if (seen_point) throw ParseError(line, "malformed number '" + std::string(token) + "'");
      seen_point = true;
      continue;
    }
    if (ch < '0' || ch > '9') {
      throw ParseError(line, "malformed number '" + std::string(token) + "'");
    }
    any_digit = true;
    if (seen_point && ++d.frac_digits > kMaxFracDigits) {
      throw ParseError(line, "more than " + std::to_string(kMaxFracDigits) +
                                 " fractional digits in '" + std::string(token) + "'");
    }
    if (__builtin_mul_overflow(d.mantissa, Value{10}, &d.mantissa) ||
        __builtin_add_overflow(d.mantissa, Value{ch - '0'}, &d.mantissa)) {
      throw ParseError(line, "number out of range '" + std::string(token) + "'");
    }
  }
  if (!any_digit) throw ParseError(line, "malformed number '" + std::string(token) + "'");
  if (negative) d.mantissa = -d.mantissa;
  return d;
}

// mantissa scaled from frac_digits up to the dimension scale (1 or 10^6).
inline Value apply_scale(const Decimal& d, Value scale, int line) {
  Value factor = 1;
  if (scale == kFracScale) {
    for (int i = d.frac_digits; i < kMaxFracDigits; ++i) factor *= 10;
  }
  Value out;
  if (__builtin_mul_overflow(d.mantissa, factor, &out)) {
    throw ParseError(line, "number out of range after scaling");
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == '\t' || line[pos] == ' ')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != '\t' && line[end] != ' ') ++end;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

inline std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

inline bool is_blank_or_comment(std::string_view line) {
  for (const char ch : line) {
    if (ch == '#') return true;
    if (ch != ' ' && ch != '\t') return false;
  }
  return true;
}

// Splits text into lines, feeding each (without the newline) to fn(line).
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    fn(text.substr(pos, end - pos));
    pos = end + 1;
  }
}

}  // namespace detail

// Line-at-a-time parser for the pairs format: `a<TAB>w` per record, w
// optional (default 1), `#` comment lines skipped. Emits already-scaled
// pairs and reports when a dimension's scale jumps to 10^6 so a streaming
// consumer can rescale what it already holds.
class PairsParser {
 public:
  struct Upgrades {
    bool values = false;
    bool widths = false;
  };

  // Pre-commits the width scale, used when the width bounds on the command
  // line carry fractional digits.
  void force_width_scale() { width_scale_ = kFracScale; }

  Value value_scale() const { return value_scale_; }
  Width width_scale() const { return width_scale_; }
  int line_number() const { return line_; }

  std::optional<WeightedValue> feed(std::string_view raw, Upgrades& up) {
    ++line_;
    const std::string_view line = detail::strip_cr(raw);
    if (detail::is_blank_or_comment(line)) return std::nullopt;
    const auto fields = detail::split_fields(line);
    if (fields.empty() || fields.size() > 2) {
      throw ParseError(line_, "expected 'a' or 'a<TAB>w'");
    }
    const Decimal a = parse_decimal(fields[0], line_);
    const Decimal w = fields.size() == 2 ? parse_decimal(fields[1], line_) : Decimal{1, 0};
    if (a.frac_digits > 0 && value_scale_ == 1) {
      value_scale_ = kFracScale;
      up.values = true;
    }
    if (w.frac_digits > 0 && width_scale_ == 1) {
      width_scale_ = kFracScale;
      up.widths = true;
    }
    const WeightedValue pair{apply_scale(a, value_scale_, line_),
                             apply_scale(w, width_scale_, line_)};
    if (pair.w <= 0) throw ParseError(line_, "width must be positive");
    return pair;
  }

 private:
  Value value_scale_ = 1;
  Width width_scale_ = 1;
  int line_ = 0;
};

struct PairsFile {
  std::vector<WeightedValue> pairs;
  Value value_scale = 1;
  Width width_scale = 1;
};

inline PairsFile parse_pairs(std::string_view text) {
  PairsFile out;
  PairsParser parser;
  detail::for_each_line(text, [&](std::string_view line) {
    PairsParser::Upgrades up;
    const auto pair = parser.feed(line, up);
    if (up.values) {
      for (auto& p : out.pairs) p.a *= kFracScale;
    }
    if (up.widths) {
      for (auto& p : out.pairs) p.w *= kFracScale;
    }
    if (pair) out.pairs.push_back(*pair);
  });
  out.value_scale = parser.value_scale();
  out.width_scale = parser.width_scale();
  return out;
}

// FASTA ingestion for GC scanning: each base becomes (1,1) when it pairs
// strongly (G/C/S) and (0,1) otherwise; ambiguity codes other than S/W count
// a warning. Record boundaries are kept as metadata; the bases of all
// records concatenate into one sequence.
class FastaParser {
 public:
  struct Record {
    std::string name;
    Index first = 0;  // index of the record's first base, 1-based
    Index count = 0;
  };

  const std::vector<Record>& records() const { return records_; }
  std::uint64_t ambiguity_warnings() const { return warnings_; }
  Index base_count() const { return bases_; }

  template <typename OnPair>
  void feed(std::string_view raw, OnPair&& on) {
    ++line_;
    const std::string_view line = detail::strip_cr(raw);
    if (!line.empty() && line.front() == '>') {
      Record rec;
      rec.name = std::string(line.substr(1, line.find_first_of(" \t") - 1));
      rec.first = bases_ + 1;
      records_.push_back(std::move(rec));
      return;
    }
    for (std::size_t col = 0; col < line.size(); ++col) {
      const char ch = line[col];
      if (ch == ' ' || ch == '\t') continue;
      if (records_.empty()) throw ParseError(line_, "sequence data before any FASTA header");
      on(WeightedValue{classify(ch, static_cast<int>(col) + 1), 1});
      ++bases_;
      ++records_.back().count;
    }
  }

 private:
  Value classify(char ch, int column) {
    switch (std::toupper(static_cast<unsigned char>(ch))) {
      case 'G': case 'C': case 'S':
        return 1;
      case 'A': case 'T': case 'U': case 'W':
        return 0;
      case 'R': case 'Y': case 'K': case 'M':
      case 'B': case 'D': case 'H': case 'V': case 'N':
        ++warnings_;
        return 0;
      default:
        throw ParseError(line_, column,
                         std::string("non-IUPAC character '") + ch + "' in sequence");
    }
  }

  std::vector<Record> records_;
  std::uint64_t warnings_ = 0;
  Index bases_ = 0;
  int line_ = 0;
};

struct FastaFile {
  std::vector<WeightedValue> pairs;
  std::vector<FastaParser::Record> records;
  std::uint64_t ambiguity_warnings = 0;
};

inline FastaFile parse_fasta_gc(std::string_view text) {
  FastaFile out;
  FastaParser parser;
  detail::for_each_line(text, [&](std::string_view line) {
    parser.feed(line, [&](const WeightedValue& p) { out.pairs.push_back(p); });
  });
  out.records = parser.records();
  out.ambiguity_warnings = parser.ambiguity_warnings();
  return out;
}

struct RleFile {
  RunLengthSequence runs;
  Value value_scale = 1;
};

// Run-length format: `a'<TAB>n_k` per line with strictly increasing
// cumulative end indices; values follow the decimal scaling rule.
inline RleFile parse_rle(std::string_view text) {
  RleFile out;
  int line_no = 0;
  detail::for_each_line(text, [&](std::string_view raw) {
    ++line_no;
    const std::string_view line = detail::strip_cr(raw);
    if (detail::is_blank_or_comment(line)) return;
    const auto fields = detail::split_fields(line);
    if (fields.size() != 2) throw ParseError(line_no, "expected \"value<TAB>end\"");
    const Decimal value = parse_decimal(fields[0], line_no);
    const Decimal end = parse_decimal(fields[1], line_no);
    if (end.frac_digits != 0 || end.mantissa <= 0) {
      throw ParseError(line_no, "run end must be a positive integer");
    }
    if (!out.runs.runs.empty() && end.mantissa <= out.runs.runs.back().end) {
      throw ParseError(line_no, "run end indices must be strictly increasing");
    }
    if (value.frac_digits > 0 && out.value_scale == 1) {
      out.value_scale = kFracScale;
      for (auto& run : out.runs.runs) run.value *= kFracScale;
    }
    out.runs.runs.push_back({apply_scale(value, out.value_scale, line_no), end.mantissa});
  });
  return out;
}

// ---- exact output formatting --------------------------------------------

inline std::string to_string_i128(__int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : v;
  std::string out;
  while (mag > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (neg) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

// The stored fraction re-expressed in unscaled units: multiplying numerator
// by the width scale and denominator by the value scale cancels both scales
// exactly. Not reduced; with equal scales this is the raw prefix-sum
// fraction.
inline std::string format_fraction(const Density& d, Value value_scale, Width width_scale) {
  const Value g = std::gcd(value_scale, width_scale);
  const __int128 num = static_cast<__int128>(d.num) * (width_scale / g);
  const __int128 den = static_cast<__int128>(d.den) * (value_scale / g);
  return to_string_i128(num) + "/" + to_string_i128(den);
}

// Canonical lowest-terms form; scale independent.
inline std::string format_reduced_fraction(const Density& d, Value value_scale,
                                           Width width_scale) {
  const Value g0 = std::gcd(value_scale, width_scale);
  const __int128 num = static_cast<__int128>(d.num) * (width_scale / g0);
  const __int128 den = static_cast<__int128>(d.den) * (value_scale / g0);
  unsigned __int128 a = num < 0 ? -static_cast<unsigned __int128>(num)
                                : static_cast<unsigned __int128>(num);
  unsigned __int128 b = static_cast<unsigned __int128>(den);
  while (b != 0) {
    const unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  const __int128 g = a == 0 ? 1 : static_cast<__int128>(a);
  return to_string_i128(num / g) + "/" + to_string_i128(den / g);
}

// Exact decimal expansion of the unscaled density, rounded to `places`
// digits, ties away from zero.
inline std::string format_decimal(const Density& d, Value value_scale, Width width_scale,
                                  int places) {
  const Value g = std::gcd(value_scale, width_scale);
  const __int128 num = static_cast<__int128>(d.num) * (width_scale / g);
  const __int128 den = static_cast<__int128>(d.den) * (value_scale / g);
  const bool neg = num < 0;
  unsigned __int128 p = neg ? -static_cast<unsigned __int128>(num) : num;
  unsigned __int128 q = den;
  unsigned __int128 pow = 1;
  for (int i = 0; i < places; ++i) pow *= 10;
  unsigned __int128 scaled = p * pow;
  unsigned __int128 digits = scaled / q;
  if ((scaled % q) * 2 >= q) ++digits;
  const std::string body = to_string_i128(static_cast<__int128>(digits));
  std::string frac = body.size() > static_cast<std::size_t>(places)
                         ? body.substr(body.size() - places)
                         : std::string(places - body.size(), '0') + body;
  std::string whole = body.size() > static_cast<std::size_t>(places)
                          ? body.substr(0, body.size() - places)
                          : "0";
  std::string out = whole + "." + frac;
  if (neg && digits != 0) out.insert(out.begin(), '-');
  return out;
}

// Width in unscaled units as a minimal exact decimal.
inline std::string format_width(Width w, Width width_scale) {
  if (width_scale == 1 || w % width_scale == 0) return std::to_string(w / width_scale);
  std::string out = std::to_string(w / width_scale) + ".";
  Width rem = w % width_scale;
  Width scale = width_scale;
  while (rem != 0) {
    scale /= 10;
    out.push_back(static_cast<char>('0' + rem / scale));
    rem %= scale;
  }
  return out;
}

}  // namespace denseg::io
