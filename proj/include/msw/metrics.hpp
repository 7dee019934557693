#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "msw/msalign.hpp"
#include "msw/row_matrix.hpp"

namespace msw {

/// Sum-of-pairs unit cost: for every unordered row pair, the number of
/// columns where the two cells differ (gap against gap is free).
long sp_edit_distance(const RowMatrix& rows);
long sp_edit_distance(const std::vector<std::string>& rows, char gap);

/// Total length of the aligned common sub-sequences.
long overlap_chars(const AnchorChain& chain);

/// Columns in which every row holds the same non-gap byte.
long overlap_chars_matrix(const RowMatrix& rows);
long overlap_chars_matrix(const std::vector<std::string>& rows, char gap);

/// Peak resident set size of this process in kilobytes, if the platform
/// reports one.
std::optional<long> peak_rss_kb();

struct AlignmentReport {
  std::optional<long> sp_edit_distance;  // unset when no row matrix is produced
  std::optional<long> overlap_chars;
  long anchor_count = 0;
  long msw_count = 0;
  std::chrono::nanoseconds elapsed{0};
  long rows = 0;
  long columns = 0;
  std::optional<long> peak_rss_kb;
};

nlohmann::json to_json(const AlignmentReport& report);

enum class FitModel { linear, quadratic };

/// Least-squares fit of t = c0 + c1 n (+ c2 n^2). `coefficients` are ordered
/// by ascending power.
struct FitResult {
  FitModel model = FitModel::linear;
  Eigen::VectorXd coefficients;
  double r_squared = 0;

  double leading() const { return coefficients(coefficients.size() - 1); }
};

/// Throws std::invalid_argument with fewer than three distinct n values or a
/// rank-deficient design.
FitResult fit_scaling(const std::vector<std::pair<double, double>>& points, FitModel model);

}  // namespace msw
