#include "msw/bench.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "msw/baseline.hpp"

namespace msw {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::ms: return "ms";
    case Algorithm::clustalw_lite: return "clustalw_lite";
    case Algorithm::nw_pairwise: return "nw_pairwise";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::ms, Algorithm::clustalw_lite, Algorithm::nw_pairwise})
    if (name == to_string(a)) return a;
  return std::nullopt;
}

std::vector<std::size_t> default_counts(std::size_t corpus_size) {
  std::vector<std::size_t> out;
  for (std::size_t n : {2, 5, 10, 15, 20, 25, 50, 100, 200})
    if (n <= corpus_size) out.push_back(n);
  if (out.empty() || out.back() != corpus_size) out.push_back(corpus_size);
  return out;
}

void BenchPlan::validate(std::size_t corpus_size) const {
  if (counts.empty()) throw std::invalid_argument("benchmark needs at least one sequence count");
  if (!std::is_sorted(counts.begin(), counts.end()) ||
      std::adjacent_find(counts.begin(), counts.end()) != counts.end())
    throw std::invalid_argument("sequence counts must be strictly increasing");
  if (counts.front() < 2) throw std::invalid_argument("sequence counts must be at least 2");
  if (counts.back() > corpus_size)
    throw std::invalid_argument("corpus has " + std::to_string(corpus_size) + " sequences, plan needs " +
                                std::to_string(counts.back()));
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
}

AlignmentReport run_once(Algorithm algorithm, const Corpus& corpus, const StrategyConfig& cfg) {
  using clock = std::chrono::steady_clock;
  AlignmentReport report;
  report.rows = static_cast<long>(corpus.size());

  switch (algorithm) {
    case Algorithm::ms: {
      AlignStats stats;
      const auto t0 = clock::now();
      const AnchorChain chain = align(corpus, cfg, &stats);
      report.elapsed = clock::now() - t0;
      const RowMatrix rows = render(corpus, chain);
      report.sp_edit_distance = sp_edit_distance(rows);
      report.overlap_chars = overlap_chars(chain);
      report.anchor_count = static_cast<long>(chain.size());
      report.msw_count = static_cast<long>(stats.msw_count);
      report.columns = static_cast<long>(rows.cols());
      break;
    }
    case Algorithm::clustalw_lite: {
      const auto t0 = clock::now();
      const RowMatrix rows = clustalw_lite(corpus);
      report.elapsed = clock::now() - t0;
      report.sp_edit_distance = sp_edit_distance(rows);
      report.overlap_chars = overlap_chars_matrix(rows);
      report.columns = static_cast<long>(rows.cols());
      break;
    }
    case Algorithm::nw_pairwise: {
      long checksum = 0;
      const auto t0 = clock::now();
      for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j)
          checksum += needleman_wunsch(corpus[i].bytes(), corpus[j].bytes()).score;
      report.elapsed = clock::now() - t0;
      (void)checksum;
      break;
    }
  }
  report.peak_rss_kb = peak_rss_kb();
  return report;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of nothing");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double BenchResult::median_ns(Algorithm algorithm, std::size_t n) const {
  std::vector<double> times;
  for (const auto& r : runs)
    if (r.algorithm == algorithm && r.n == n) times.push_back(static_cast<double>(r.report.elapsed.count()));
  return median(std::move(times));
}

double BenchResult::speed_up(std::size_t n) const {
  return median_ns(Algorithm::clustalw_lite, n) / median_ns(Algorithm::ms, n);
}

FitResult BenchResult::fit(Algorithm algorithm, FitModel model) const {
  std::vector<std::size_t> ns;
  for (const auto& r : runs)
    if (r.algorithm == algorithm && std::find(ns.begin(), ns.end(), r.n) == ns.end()) ns.push_back(r.n);
  std::vector<std::pair<double, double>> points;
  for (auto n : ns) points.emplace_back(static_cast<double>(n), median_ns(algorithm, n));
  return fit_scaling(points, model);
}

BenchResult run_bench(const Corpus& corpus, const BenchPlan& plan, const StrategyConfig& cfg,
                      const BenchProgress& progress) {
  plan.validate(corpus.size());
  BenchResult result;
  for (auto algorithm : plan.algorithms)
    for (auto n : plan.counts) {
      const Corpus prefix = take_prefix(corpus, n);
      for (std::size_t rep = 0; rep < plan.repeats; ++rep) {
        result.runs.push_back({algorithm, n, rep, run_once(algorithm, prefix, cfg)});
        if (progress) progress(result.runs.back());
      }
    }
  return result;
}

std::string csv_row(const BenchRun& run) {
  auto opt = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string(); };
  std::ostringstream row;
  row << to_string(run.algorithm) << ',' << run.n << ',' << run.repeat << ','
      << run.report.elapsed.count() << ',' << opt(run.report.sp_edit_distance) << ','
      << opt(run.report.overlap_chars) << ',' << run.report.anchor_count << ','
      << run.report.msw_count;
  return row.str();
}

}  // namespace msw
