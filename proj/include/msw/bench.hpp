#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "msw/corpus.hpp"
#include "msw/metrics.hpp"
#include "msw/msalign.hpp"

namespace msw {

enum class Algorithm {
  ms,             ///< GST anchor alignment
  clustalw_lite,  ///< all-pairs distances, neighbour joining, progressive profiles
  nw_pairwise,    ///< all-pairs Needleman-Wunsch scoring only; no row matrix
};

std::string to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Sequence counts benchmarked by default: 2, 5, 10, 15, 20, 25, 50, 100, 200
/// (those not exceeding the corpus) followed by the whole corpus.
std::vector<std::size_t> default_counts(std::size_t corpus_size);

struct BenchPlan {
  std::vector<std::size_t> counts;
  std::size_t repeats = 25;
  std::vector<Algorithm> algorithms{Algorithm::ms, Algorithm::clustalw_lite};
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument for an empty or unsorted schedule, zero
  /// repeats, or counts exceeding the corpus.
  void validate(std::size_t corpus_size) const;
};

/// Times one alignment of the whole corpus and computes its metrics. Only the
/// alignment itself is inside the timed region.
AlignmentReport run_once(Algorithm algorithm, const Corpus& corpus, const StrategyConfig& cfg = {});

struct BenchRun {
  Algorithm algorithm;
  std::size_t n;
  std::size_t repeat;
  AlignmentReport report;
};

struct BenchResult {
  std::vector<BenchRun> runs;

  /// Median elapsed time over the repeats of one cell, in nanoseconds.
  double median_ns(Algorithm algorithm, std::size_t n) const;
  /// Median clustalw_lite time over median ms time.
  double speed_up(std::size_t n) const;
  /// Fit of median time against n for one algorithm.
  FitResult fit(Algorithm algorithm, FitModel model) const;
};

using BenchProgress = std::function<void(const BenchRun&)>;

/// Runs every (algorithm, n) cell `repeats` times, sequentially, on the first
/// n sequences of the corpus.
BenchResult run_bench(const Corpus& corpus, const BenchPlan& plan, const StrategyConfig& cfg = {},
                      const BenchProgress& progress = {});

inline constexpr const char* kCsvHeader =
    "algorithm,n,repeat,elapsed_ns,sp_edit_distance,overlap_chars,anchor_count,msw_count";

std::string csv_row(const BenchRun& run);

double median(std::vector<double> values);

}  // namespace msw
