#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "msw/baseline.hpp"
#include "msw/bench.hpp"
#include "msw/corpus.hpp"
#include "msw/gst.hpp"
#include "msw/metrics.hpp"
#include "msw/msalign.hpp"

namespace msw::cli {

namespace {

struct InputOptions {
  std::string path;
  std::string mode = "raw";
  std::size_t n = 0;  // 0: all
  std::optional<std::size_t> truncate;

  void add_to(CLI::App& cmd, bool required = true) {
    auto* opt = cmd.add_option("input", path, "Input file, one message per line (or FASTA)");
    if (required) opt->required()->check(CLI::ExistingFile);
    cmd.add_option("--mode", mode, "Input encoding")
        ->check(CLI::IsMember({"raw", "hex", "fasta"}))
        ->capture_default_str();
    cmd.add_option("--n", n, "Use only the first n sequences");
    cmd.add_option("--truncate", truncate, "FASTA only: keep the first k symbols of each record");
  }

  Corpus load() const {
    Corpus c = mode == "fasta" ? load_fasta(path, truncate)
                               : load_lines(path, mode == "hex" ? LineMode::hex : LineMode::raw);
    return n ? take_prefix(c, n) : c;
  }
};

struct StrategyOptions {
  std::string kind = "biggest_left_most";
  StrategyConfig cfg;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--strategy", kind, "Anchor selection strategy")
        ->check(CLI::IsMember({"biggest_left_most", "min_variance"}))
        ->capture_default_str();
    cmd.add_option("--n-largest", cfg.n_largest, "min_variance: number of longest MSWs considered")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--min-anchor-len", cfg.min_anchor_len, "Shortest anchor kept")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--combination-cap", cfg.combination_cap,
                   "min_variance: skip MSWs with more occurrence combinations than this")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  StrategyConfig config() const {
    StrategyConfig c = cfg;
    c.kind = kind == "min_variance" ? Strategy::min_variance : Strategy::biggest_left_most;
    return c;
  }
};

const char* strategy_name(Strategy s) {
  return s == Strategy::min_variance ? "min_variance" : "biggest_left_most";
}

nlohmann::json chain_json(const AnchorChain& chain) {
  auto out = nlohmann::json::array();
  for (const auto& a : chain.anchors) out.push_back({{"value", to_hex(a.value)}, {"starts", a.starts}});
  return out;
}

nlohmann::json config_json(const StrategyConfig& cfg) {
  return {{"strategy", strategy_name(cfg.kind)},
          {"n_largest", cfg.n_largest},
          {"min_anchor_len", cfg.min_anchor_len},
          {"combination_cap", cfg.combination_cap}};
}

// Output goes to --output when given, else to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw DataError("cannot write " + path);
    out_ = &file_;
  }
  std::ostream& get() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

std::string visible_spaces(const std::string& row) {
  std::string out;
  for (char c : row) {
    if (c == ' ')
      out += "␣";
    else
      out.push_back(c);
  }
  return out;
}

int cmd_align(const InputOptions& in, const StrategyOptions& strat, char gap_char, bool visible,
              const std::string& format, const std::string& output, std::ostream& out) {
  const Corpus corpus = in.load();
  const StrategyConfig cfg = strat.config();
  AlignStats stats;
  const auto t0 = std::chrono::steady_clock::now();
  const AnchorChain chain = align(corpus, cfg, &stats);
  const auto elapsed = std::chrono::steady_clock::now() - t0;
  validate_chain(corpus, chain);

  const RowMatrix rows = render(corpus, chain);
  AlignmentReport report;
  report.sp_edit_distance = sp_edit_distance(rows);
  report.overlap_chars = overlap_chars(chain);
  report.anchor_count = static_cast<long>(chain.size());
  report.msw_count = static_cast<long>(stats.msw_count);
  report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed);
  report.rows = rows.rows();
  report.columns = rows.cols();
  report.peak_rss_kb = peak_rss_kb();

  Sink sink(output, out);
  if (format == "json") {
    nlohmann::json j{{"source", corpus.source()},
                     {"config", config_json(cfg)},
                     {"chain", chain_json(chain)},
                     {"report", to_json(report)}};
    if (stats.skipped_candidates) j["skipped_candidates"] = stats.skipped_candidates;
    sink.get() << j.dump(2) << '\n';
    return kOk;
  }
  for (const auto& row : to_text(rows, gap_char)) sink.get() << (visible ? visible_spaces(row) : row) << '\n';
  sink.get() << "\n# strategy: " << strategy_name(cfg.kind);
  if (cfg.kind == Strategy::min_variance) sink.get() << " (n_largest " << cfg.n_largest << ')';
  sink.get() << "\n# anchors: " << chain.size() << "\n# msw_count: " << stats.msw_count
             << "\n# overlap_chars: " << *report.overlap_chars
             << "\n# sp_edit_distance: " << *report.sp_edit_distance
             << "\n# elapsed_ns: " << report.elapsed.count() << '\n';
  return kOk;
}

int cmd_proto(const InputOptions& in, const StrategyOptions& strat, bool verify,
              const std::string& verify_against, std::ostream& out, std::ostream& err) {
  const Corpus corpus = in.load();
  const StrategyConfig skeleton_cfg = strat.config();
  StrategyConfig align_cfg = skeleton_cfg;
  align_cfg.min_anchor_len = 1;  // short anchors still split the recursion
  const AnchorChain chain = align(corpus, align_cfg);
  const std::string pattern = regex_skeleton(corpus, chain, skeleton_cfg);
  out << pattern << '\n';
  if (!verify && verify_against.empty()) return kOk;

  Corpus checked = corpus;
  if (!verify_against.empty()) {
    InputOptions other = in;
    other.path = verify_against;
    other.n = 0;
    checked = other.load();
  }
  const std::regex re(pattern);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < checked.size(); ++i)
    if (!std::regex_match(checked[i].bytes(), re)) bad.push_back(checked.source_line(i));
  if (bad.empty()) {
    err << "verified: pattern matches all " << checked.size() << " messages\n";
    return kOk;
  }
  err << "verification failed on line";
  if (bad.size() > 1) err << 's';
  for (auto l : bad) err << ' ' << l;
  err << '\n';
  return kVerifyFailed;
}

int cmd_gst(const InputOptions& in, const std::string& format, std::ostream& out) {
  const Corpus corpus = in.load();
  if (corpus.size() < 2) throw DataError("multi sub-words need at least 2 sequences");
  const Gst gst(corpus);
  const auto values = fully_coloured_values(gst);
  const auto msws = extract_msws(gst);
  const auto combos = count_combinations(msws);

  if (format == "json") {
    nlohmann::json j{{"sequences", corpus.size()},
                     {"total_length", corpus.total_length()},
                     {"branching_nodes", gst.branching_count()},
                     {"leaves", gst.leaf_count()},
                     {"fully_coloured", values.size()},
                     {"combinations", combos.str()}};
    auto list = nlohmann::json::array();
    for (const auto& m : msws) {
      nlohmann::json occ = nlohmann::json::array();
      for (std::size_t s = 0; s < m.occurrences.size(); ++s)
        for (auto start : m.occurrences[s]) occ.push_back({s, start});
      list.push_back({{"value", to_hex(m.value)}, {"text", printable(m.value)}, {"occurrences", occ}});
    }
    j["msws"] = std::move(list);
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "sequences: " << corpus.size() << "\ntotal length: " << corpus.total_length()
      << "\nbranching nodes: " << gst.branching_count() << " (including root)\nleaves: "
      << gst.leaf_count() << "\nfully coloured nodes: " << values.size() << "\nfully coloured values:";
  for (const auto& v : values) out << " " << printable(v);
  out << "\nmulti sub-words: " << msws.size() << '\n';
  for (const auto& m : msws) out << "  " << to_string(m) << '\n';
  out << "combinations: " << combos.str() << '\n';
  return kOk;
}

Corpus generated_corpus(const std::string& gen, std::uint64_t default_seed) {
  // template:n[:seed]
  std::vector<std::string> parts;
  std::stringstream ss(gen);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 2 || parts.size() > 3) throw CLI::ValidationError("--gen", "expected template:n[:seed]");
  auto kind = parse_template(parts[0]);
  if (!kind) throw CLI::ValidationError("--gen", "unknown template " + parts[0]);
  try {
    const std::size_t n = std::stoul(parts[1]);
    const std::uint64_t seed = parts.size() == 3 ? std::stoull(parts[2]) : default_seed;
    return generate_synthetic(*kind, n, seed);
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--gen", "bad number in " + gen);
  }
}

struct BenchOptions {
  std::string gen;
  std::vector<std::size_t> counts;
  std::size_t repeats = 25;
  std::vector<std::string> algorithms{"ms", "clustalw_lite"};
  std::uint64_t seed = 1;
  std::string csv;
  bool fit = false;
};

int cmd_bench(const InputOptions& in, const StrategyOptions& strat, const BenchOptions& opt,
              std::ostream& out, std::ostream& err) {
  if (in.path.empty() == opt.gen.empty())
    throw CLI::ValidationError("bench", "give exactly one of an input file or --gen");
  const Corpus corpus = opt.gen.empty() ? in.load() : generated_corpus(opt.gen, opt.seed);

  BenchPlan plan;
  plan.counts = opt.counts.empty() ? default_counts(corpus.size()) : opt.counts;
  plan.repeats = opt.repeats;
  plan.seed = opt.seed;
  plan.algorithms.clear();
  for (const auto& name : opt.algorithms) {
    auto a = parse_algorithm(name);
    if (!a) throw CLI::ValidationError("--algorithms", "unknown algorithm " + name);
    plan.algorithms.push_back(*a);
  }
  plan.validate(corpus.size());

  std::ofstream csv;
  if (!opt.csv.empty()) {
    const bool fresh = !std::filesystem::exists(opt.csv) || std::filesystem::file_size(opt.csv) == 0;
    csv.open(opt.csv, std::ios::app);
    if (!csv) throw DataError("cannot write " + opt.csv);
    if (fresh) csv << kCsvHeader << '\n';
  }
  const BenchResult result = run_bench(corpus, plan, strat.config(), [&](const BenchRun& run) {
    if (csv.is_open()) csv << csv_row(run) << '\n';
  });

  const auto has = [&](Algorithm a) {
    return std::find(plan.algorithms.begin(), plan.algorithms.end(), a) != plan.algorithms.end();
  };
  const bool speed_up = has(Algorithm::ms) && has(Algorithm::clustalw_lite);
  out << "corpus: " << corpus.source() << " (" << corpus.size() << " sequences)\n";
  out << "median elapsed ms over " << plan.repeats << " repeats\n";
  out << std::setw(8) << "n";
  for (auto a : plan.algorithms) out << std::setw(16) << to_string(a);
  if (speed_up) out << std::setw(12) << "speed-up";
  out << '\n' << std::fixed << std::setprecision(3);
  for (auto n : plan.counts) {
    out << std::setw(8) << n;
    for (auto a : plan.algorithms) out << std::setw(16) << result.median_ns(a, n) / 1e6;
    if (speed_up) out << std::setw(12) << result.speed_up(n);
    out << '\n';
  }
  if (opt.fit) {
    if (plan.counts.size() < 3) {
      err << "fit skipped: needs at least 3 sequence counts\n";
    } else {
      out << std::setprecision(6);
      for (auto a : plan.algorithms) {
        const auto lin = result.fit(a, FitModel::linear);
        const auto quad = result.fit(a, FitModel::quadratic);
        out << to_string(a) << ": linear R^2 " << lin.r_squared << ", quadratic R^2 " << quad.r_squared
            << " (quadratic coefficient " << quad.leading() << " ns/n^2)\n";
      }
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiple sequence alignment of many short messages via generalized suffix trees"};
  app.name(args.empty() ? "msw" : std::filesystem::path(args[0]).filename().string());
  app.require_subcommand(1);

  InputOptions align_in, proto_in, gst_in, bench_in;
  StrategyOptions align_strat, proto_strat, bench_strat;

  auto* align_cmd = app.add_subcommand("align", "Align messages and print the gapped rows or the anchor chain");
  align_in.add_to(*align_cmd);
  align_strat.add_to(*align_cmd);
  char gap_char = '*';
  bool visible = false;
  std::string align_format = "text", align_output;
  align_cmd->add_option("--gap-char", gap_char, "Gap display character")->capture_default_str();
  align_cmd->add_flag("--visible-space", visible, "Show spaces in text rows as ␣");
  align_cmd->add_option("--out", align_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  align_cmd->add_option("-o,--output", align_output, "Write to this file instead of standard output");

  auto* proto_cmd = app.add_subcommand("proto", "Print a regular expression skeleton for the messages");
  proto_in.add_to(*proto_cmd);
  proto_strat.add_to(*proto_cmd);
  bool verify = false;
  std::string verify_against;
  proto_cmd->add_flag("--verify", verify, "Check the pattern against every input message");
  proto_cmd->add_option("--verify-against", verify_against,
                        "Check the pattern against the messages in this file instead")
      ->check(CLI::ExistingFile);

  auto* gst_cmd = app.add_subcommand("gst", "Dump suffix tree statistics and the multi sub-words");
  gst_in.add_to(*gst_cmd);
  std::string gst_format = "text";
  gst_cmd->add_option("--out", gst_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench", "Time alignments over growing prefixes of a corpus");
  bench_in.add_to(*bench_cmd, false);
  bench_strat.add_to(*bench_cmd);
  BenchOptions bench;
  bench_cmd->add_option("--gen", bench.gen, "Synthetic corpus instead of a file: template:n[:seed]");
  bench_cmd->add_option("--counts", bench.counts, "Sequence counts (default 2,5,10,15,20,25,50,100,200,all)")
      ->delimiter(',');
  bench_cmd->add_option("--repeats", bench.repeats, "Repetitions per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--algorithms", bench.algorithms, "Any of ms, clustalw_lite, nw_pairwise")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Seed for --gen when it names none")->capture_default_str();
  bench_cmd->add_option("--csv", bench.csv, "Append raw per-run rows to this CSV file");
  bench_cmd->add_flag("--fit", bench.fit, "Fit linear and quadratic models to the median times");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*align_cmd) return cmd_align(align_in, align_strat, gap_char, visible, align_format, align_output, out);
    if (*proto_cmd) return cmd_proto(proto_in, proto_strat, verify, verify_against, out, err);
    if (*gst_cmd) return cmd_gst(gst_in, gst_format, out);
    if (*bench_cmd) return cmd_bench(bench_in, bench_strat, bench, out, err);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace msw::cli
