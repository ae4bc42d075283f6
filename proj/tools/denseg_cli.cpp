// denseg: maximum-density segment finder.
//
//   denseg solve  --wmin 2 --wmax 3 input.tsv
//   denseg verify --wmin 2 --wmax 3 --format rle runs.tsv
//   denseg bench
//
// Exit codes: 0 success, 2 bad input or usage, 3 no feasible segment,
// 4 verify guard exceeded, 70 internal invariant failure.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "denseg/denseg.hpp"

namespace {

using nlohmann::json;
using namespace denseg;

constexpr Width kIneffectiveWidth = Width{1} << 62;

struct Options {
  std::string command;
  std::string wmin_text;
  std::string wmax_text;
  std::string format = "pairs";
  std::string algorithm = "auto";
  bool all = false;
  bool stream = false;
  bool json_out = false;
  std::string input = "-";
};

struct ScaledBounds {
  Width wmin = 1;
  Width wmax = kIneffectiveWidth;
  bool wmax_given = false;
  io::Decimal wmin_dec;
  io::Decimal wmax_dec;
  bool fractional() const {
    return wmin_dec.frac_digits > 0 || (wmax_given && wmax_dec.frac_digits > 0);
  }
};

ScaledBounds parse_bounds(const Options& opt) {
  ScaledBounds b;
  b.wmin_dec = io::parse_decimal(opt.wmin_text, 0);
  if (b.wmin_dec.mantissa <= 0) throw std::invalid_argument("--wmin must be positive");
  b.wmax_given = !opt.wmax_text.empty();
  if (b.wmax_given) {
    b.wmax_dec = io::parse_decimal(opt.wmax_text, 0);
  }
  return b;
}

// Bounds in a dimension scaled by `width_scale` (pairs and fasta inputs).
void scale_bounds(ScaledBounds& b, Width width_scale) {
  b.wmin = io::apply_scale(b.wmin_dec, width_scale, 0);
  b.wmax = b.wmax_given ? io::apply_scale(b.wmax_dec, width_scale, 0) : kIneffectiveWidth;
  if (b.wmax < b.wmin) throw std::invalid_argument("--wmax must be >= --wmin");
}

// Unit-width inputs (rle): fractional bounds round inward, which is exact
// for integer widths.
void integerize_bounds(ScaledBounds& b) {
  auto pow10 = [](int digits) {
    Width f = 1;
    while (digits-- > 0) f *= 10;
    return f;
  };
  {
    const Width f = pow10(b.wmin_dec.frac_digits);
    b.wmin = (b.wmin_dec.mantissa + f - 1) / f;  // ceil
  }
  if (b.wmax_given) {
    const Width f = pow10(b.wmax_dec.frac_digits);
    b.wmax = b.wmax_dec.mantissa / f;  // floor
  } else {
    b.wmax = kIneffectiveWidth;
  }
  if (b.wmax < b.wmin) throw std::invalid_argument("--wmax must be >= --wmin");
}

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedInput {
  std::vector<WeightedValue> pairs;       // empty for rle
  RunLengthSequence runs;                 // rle only
  Value value_scale = 1;
  Width width_scale = 1;
  std::uint64_t warnings = 0;
};

LoadedInput load_batch(const Options& opt, ScaledBounds& bounds) {
  const std::string text = slurp(opt.input);
  LoadedInput in;
  if (opt.format == "pairs") {
    io::PairsFile file = io::parse_pairs(text);
    in.pairs = std::move(file.pairs);
    in.value_scale = file.value_scale;
    in.width_scale = file.width_scale;
    if (bounds.fractional() && in.width_scale == 1) {
      in.width_scale = io::kFracScale;
      for (auto& p : in.pairs) p.w *= io::kFracScale;
    }
    scale_bounds(bounds, in.width_scale);
  } else if (opt.format == "fasta") {
    io::FastaFile file = io::parse_fasta_gc(text);
    in.pairs = std::move(file.pairs);
    in.warnings = file.ambiguity_warnings;
    if (in.warnings > 0) {
      std::cerr << "warning: " << in.warnings << " ambiguous bases treated as non-GC\n";
    }
    if (bounds.fractional()) {
      in.width_scale = io::kFracScale;
      for (auto& p : in.pairs) p.w = io::kFracScale;
    }
    scale_bounds(bounds, in.width_scale);
  } else {
    io::RleFile file = io::parse_rle(text);
    in.runs = std::move(file.runs);
    in.value_scale = file.value_scale;
    integerize_bounds(bounds);
  }
  return in;
}

void print_result_line(std::ostream& out, const Result& r, Value vs, Width ws) {
  out << r.segment.i << '\t' << r.segment.j << '\t' << io::format_width(r.density.den, ws)
      << '\t' << io::format_fraction(r.density, vs, ws) << '\t'
      << io::format_decimal(r.density, vs, ws, 9) << '\n';
}

void print_candidate_line(std::ostream& out, const Segment& s, const Density& d, bool window,
                          Value vs, Width ws) {
  out << "c\t" << s.i << '\t' << s.j << '\t' << io::format_reduced_fraction(d, vs, ws) << '\t'
      << (window ? "window" : "chain") << '\n';
}

json result_json(const Result& r, Value vs, Width ws) {
  const Value g = std::gcd(vs, ws);
  return json{{"i", r.segment.i},
              {"j", r.segment.j},
              {"width", io::format_width(r.density.den, ws)},
              {"num", io::to_string_i128(static_cast<__int128>(r.density.num) * (ws / g))},
              {"den", io::to_string_i128(static_cast<__int128>(r.density.den) * (vs / g))},
              {"decimal", io::format_decimal(r.density, vs, ws, 9)},
              {"value_scale", vs},
              {"width_scale", ws}};
}

// Candidate-collecting observer for --all.
struct Collector {
  bool enabled = false;
  std::vector<std::tuple<Segment, Density, bool>> events;
  void candidate(const Segment& s, const Density& d, bool window) {
    if (enabled) events.emplace_back(s, d, window);
  }
  void after_extend(const CandidateChain&, Index, Index) {}
  void window_call(Index, Index, Index, Index) {}
};

int run_solve_stream(const Options& opt, ScaledBounds bounds) {
  if (opt.format == "rle") {
    throw std::invalid_argument("--stream supports pairs and fasta formats only");
  }
  if (opt.algorithm != "auto" && opt.algorithm != "linear") {
    throw std::invalid_argument("--stream requires --algorithm auto or linear");
  }
  Width width_scale = (opt.format == "pairs" || opt.format == "fasta") && bounds.fractional()
                          ? io::kFracScale
                          : 1;
  Value value_scale = 1;
  scale_bounds(bounds, width_scale);

  StreamSolver solver(bounds.wmin, bounds.wmax);
  Collector collect;
  collect.enabled = opt.all;
  solver.on_candidate([&](const Segment& s, const Density& d, bool window) {
    collect.candidate(s, d, window);
  });

  std::ifstream file;
  std::istream* in = &std::cin;
  if (opt.input != "-") {
    file.open(opt.input, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open input file '" + opt.input + "'");
    in = &file;
  }

  io::PairsParser pairs;
  if (width_scale == io::kFracScale) pairs.force_width_scale();
  io::FastaParser fasta;
  std::string line;
  while (std::getline(*in, line)) {
    if (opt.format == "pairs") {
      io::PairsParser::Upgrades up;
      const auto pair = pairs.feed(line, up);
      if (up.values) {
        solver.rescale_values(io::kFracScale);
        value_scale = io::kFracScale;
        for (auto& [s, d, w] : collect.events) d.num *= io::kFracScale;
      }
      if (up.widths) {
        solver.rescale_widths(io::kFracScale);
        width_scale = io::kFracScale;
        for (auto& [s, d, w] : collect.events) d.den *= io::kFracScale;
      }
      if (pair) solver.push(*pair);
    } else {
      fasta.feed(line, [&](WeightedValue pair) {
        pair.w = width_scale;
        solver.push(pair);
      });
    }
  }

  const Result result = solver.finalize();
  if (opt.json_out) {
    json out = result_json(result, value_scale, width_scale);
    if (opt.all) {
      out["candidates"] = json::array();
      for (const auto& [s, d, w] : collect.events) {
        out["candidates"].push_back({{"i", s.i},
                                     {"j", s.j},
                                     {"density", io::format_reduced_fraction(d, value_scale,
                                                                             width_scale)},
                                     {"source", w ? "window" : "chain"}});
      }
    }
    std::cout << out.dump() << '\n';
  } else {
    if (opt.all) {
      for (const auto& [s, d, w] : collect.events) {
        print_candidate_line(std::cout, s, d, w, value_scale, width_scale);
      }
    }
    print_result_line(std::cout, result, value_scale, width_scale);
  }
  return 0;
}

int run_solve(const Options& opt) {
  ScaledBounds bounds = parse_bounds(opt);
  if (opt.stream) return run_solve_stream(opt, bounds);

  LoadedInput in = load_batch(opt, bounds);
  Collector collect;
  collect.enabled = opt.all;

  std::optional<Result> result;
  if (opt.format == "rle" && (opt.algorithm == "auto" || opt.algorithm == "sparse")) {
    result = try_solve_runs(in.runs, bounds.wmin, bounds.wmax);
    if (result && collect.enabled) {
      collect.events.emplace_back(result->segment, result->density, false);
    }
  } else {
    std::vector<WeightedValue> seq =
        opt.format == "rle" ? in.runs.expand() : std::move(in.pairs);
    const ProblemInstance inst{std::move(seq), bounds.wmin, bounds.wmax};
    if (opt.algorithm == "brute") {
      const PrefixSums ps = PrefixSums::build(inst.seq);
      result = brute::try_solve(ps, inst.wmin, inst.wmax);
    } else {
      result = try_solve(inst, collect);
    }
  }
  if (!result) throw NoFeasibleSegment();

  if (opt.json_out) {
    json out = result_json(*result, in.value_scale, in.width_scale);
    if (opt.all) {
      out["candidates"] = json::array();
      for (const auto& [s, d, w] : collect.events) {
        out["candidates"].push_back(
            {{"i", s.i},
             {"j", s.j},
             {"density", io::format_reduced_fraction(d, in.value_scale, in.width_scale)},
             {"source", w ? "window" : "chain"}});
      }
    }
    std::cout << out.dump() << '\n';
  } else {
    if (opt.all) {
      for (const auto& [s, d, w] : collect.events) {
        print_candidate_line(std::cout, s, d, w, in.value_scale, in.width_scale);
      }
    }
    print_result_line(std::cout, *result, in.value_scale, in.width_scale);
  }
  return 0;
}

int run_verify(const Options& opt) {
  ScaledBounds bounds = parse_bounds(opt);
  LoadedInput in = load_batch(opt, bounds);

  const std::vector<WeightedValue> seq =
      opt.format == "rle" ? in.runs.expand() : std::move(in.pairs);
  const Index n = static_cast<Index>(seq.size());
  Width min_w = kIneffectiveWidth;
  for (const auto& p : seq) min_w = std::min(min_w, p.w);
  if (n > 0) {
    // brute-force cost ~ n * number of feasible widths per end
    const Width span = bounds.wmax >= kIneffectiveWidth
                           ? n
                           : std::min<Width>(n, (bounds.wmax - bounds.wmin) / min_w + 1);
    if (static_cast<double>(n) * static_cast<double>(span) > 1e8) {
      std::cerr << "verify: input too large for brute-force check\n";
      return 4;
    }
  }

  const PrefixSums ps = PrefixSums::build(seq);
  const auto expected = brute::try_solve(ps, bounds.wmin, bounds.wmax);
  auto linear = try_solve(ps, bounds.wmin, bounds.wmax, seq);
  // Self-test hook: lets the divergence path be exercised end to end.
  if (linear && std::getenv("DENSEG_VERIFY_FAULT")) linear->density.num += 1;

  auto report = [&](const char* name, const std::optional<Result>& got) {
    const auto show = [&](const std::optional<Result>& r) {
      return r ? io::format_fraction(r->density, in.value_scale, in.width_scale) +
                     " at (" + std::to_string(r->segment.i) + "," +
                     std::to_string(r->segment.j) + ")"
               : std::string("infeasible");
    };
    std::cout << "divergence: brute " << show(expected) << " vs " << name << " " << show(got)
              << '\n';
  };

  bool ok = true;
  if (expected.has_value() != linear.has_value() ||
      (expected && compare(expected->density, linear->density) != 0)) {
    report("linear", linear);
    ok = false;
  }
  if (ok && opt.format == "rle") {
    const auto sparse = try_solve_runs(in.runs, bounds.wmin, bounds.wmax);
    if (expected.has_value() != sparse.has_value() ||
        (expected && compare(expected->density, sparse->density) != 0)) {
      report("sparse", sparse);
      ok = false;
    }
  }
  if (ok) {
    std::cout << "ok: solvers agree ("
              << (expected ? io::format_fraction(expected->density, in.value_scale,
                                                 in.width_scale)
                           : std::string("infeasible"))
              << ")\n";
    return 0;
  }
  return 1;
}

int run_bench(const Options&) {
  std::cout << "family\tn\twall_ms\tpushes\tpops\tscan_steps\tbuild_steps\ttotal\tper_element\n";
  for (const Index n : {Index{10'000}, Index{100'000}, Index{1'000'000}}) {
    for (const bool adversarial : {false, true}) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(n) * 2 + adversarial);
      ProblemInstance inst;
      inst.seq.reserve(static_cast<std::size_t>(n));
      std::uniform_int_distribution<Value> av(-9, 9);
      if (adversarial) {
        // alternating narrow/wide elements force frequent window catch-ups
        const Width wide = 64;
        for (Index i = 0; i < n; ++i) {
          inst.seq.push_back({av(rng), i % 2 == 0 ? Width{1} : wide});
        }
        inst.wmin = wide;
        inst.wmax = wide + 2;
      } else {
        for (Index i = 0; i < n; ++i) inst.seq.push_back({av(rng), 1});
        inst.wmin = std::max<Width>(1, n / 20);
        inst.wmax = inst.wmin + std::max<Width>(1, n / 20);
      }
      WorkCounters c;
      const auto t0 = std::chrono::steady_clock::now();
      (void)try_solve(inst, detail::NoopObserver{}, &c);
      const auto t1 = std::chrono::steady_clock::now();
      const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      std::cout << (adversarial ? "alternating" : "uniform") << '\t' << n << '\t' << ms << '\t'
                << c.chain_pushes << '\t' << c.chain_pops << '\t' << c.table_scan_steps << '\t'
                << c.table_build_steps << '\t' << c.total() << '\t'
                << static_cast<double>(c.total()) / static_cast<double>(n) << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximum-density segment finder"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_bounds) {
    if (needs_bounds) {
      cmd->add_option("--wmin", opt.wmin_text, "minimum segment width (decimal)")->required();
      cmd->add_option("--wmax", opt.wmax_text,
                      "maximum segment width (decimal; default: unbounded)");
      cmd->add_option("--format", opt.format, "input format")
          ->check(CLI::IsMember({"pairs", "fasta", "rle"}));
      cmd->add_option("input", opt.input, "input file or '-' for stdin");
    }
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "find the maximum-density segment");
  add_common(solve_cmd, true);
  solve_cmd->add_option("--algorithm", opt.algorithm, "solver selection")
      ->check(CLI::IsMember({"auto", "brute", "linear", "sparse"}));
  solve_cmd->add_flag("--all", opt.all, "emit every candidate event");
  solve_cmd->add_flag("--stream", opt.stream, "online mode: read and solve incrementally");
  solve_cmd->add_flag("--json", opt.json_out, "machine-readable output");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check the fast solvers against brute force");
  add_common(verify_cmd, true);

  app.add_subcommand("bench", "run synthetic benchmarks with work counters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("solve")) {
      if (opt.algorithm == "sparse" && opt.format != "rle") {
        throw std::invalid_argument("--algorithm sparse requires --format rle");
      }
      return run_solve(opt);
    }
    if (app.got_subcommand("verify")) return run_verify(opt);
    return run_bench(opt);
  } catch (const NoFeasibleSegment& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 70;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
