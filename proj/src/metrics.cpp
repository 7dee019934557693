#include "msw/metrics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <Eigen/QR>
#include <sys/resource.h>

namespace msw {

long sp_edit_distance(const RowMatrix& rows) {
  if (rows.rows() < 2) throw std::invalid_argument("sum-of-pairs needs at least 2 rows");
  long total = 0;
  for (Eigen::Index a = 0; a < rows.rows(); ++a)
    for (Eigen::Index b = a + 1; b < rows.rows(); ++b)
      total += (rows.row(a).array() != rows.row(b).array()).count();
  return total;
}

long sp_edit_distance(const std::vector<std::string>& rows, char gap) {
  return sp_edit_distance(from_text(rows, gap));
}

long overlap_chars(const AnchorChain& chain) {
  long total = 0;
  for (const auto& a : chain.anchors) total += static_cast<long>(a.length());
  return total;
}

long overlap_chars_matrix(const RowMatrix& rows) {
  if (rows.rows() == 0 || rows.cols() == 0) return 0;
  const auto lo = rows.colwise().minCoeff().array();
  const auto hi = rows.colwise().maxCoeff().array();
  return ((lo == hi) && (lo != kGap)).count();
}

long overlap_chars_matrix(const std::vector<std::string>& rows, char gap) {
  return overlap_chars_matrix(from_text(rows, gap));
}

std::optional<long> peak_rss_kb() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0 || usage.ru_maxrss <= 0) return std::nullopt;
  return usage.ru_maxrss;
}

nlohmann::json to_json(const AlignmentReport& r) {
  auto opt = [](const std::optional<long>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); };
  return {{"sp_edit_distance", opt(r.sp_edit_distance)},
          {"overlap_chars", opt(r.overlap_chars)},
          {"anchor_count", r.anchor_count},
          {"msw_count", r.msw_count},
          {"elapsed_ns", r.elapsed.count()},
          {"rows", r.rows},
          {"columns", r.columns},
          {"peak_rss_kb", opt(r.peak_rss_kb)}};
}

FitResult fit_scaling(const std::vector<std::pair<double, double>>& points, FitModel model) {
  std::set<double> distinct;
  for (const auto& p : points) distinct.insert(p.first);
  if (points.size() < 3 || distinct.size() < 3)
    throw std::invalid_argument("scaling fit needs at least 3 distinct sequence counts");

  const Eigen::Index params = model == FitModel::linear ? 2 : 3;
  const auto m = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd x(m, params);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double n = points[static_cast<std::size_t>(i)].first;
    x(i, 0) = 1.0;
    x(i, 1) = n;
    if (params == 3) x(i, 2) = n * n;
    y(i) = points[static_cast<std::size_t>(i)].second;
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < params) throw std::invalid_argument("degenerate design matrix");

  FitResult fit;
  fit.model = model;
  fit.coefficients = qr.solve(y);
  const double ss_res = (y - x * fit.coefficients).squaredNorm();
  const double ss_tot = (y.array() - y.mean()).square().sum();
  fit.r_squared = ss_tot > 0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : (ss_res > 0 ? 0.0 : 1.0);
  return fit;
}

}  // namespace msw
