#include "msw/row_matrix.hpp"

#include <stdexcept>

namespace msw {

std::vector<std::string> to_text(const RowMatrix& m, char gap) {
  std::vector<std::string> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto& row = out[static_cast<std::size_t>(r)];
    row.reserve(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(m(r, c) == kGap ? gap : static_cast<char>(m(r, c)));
  }
  return out;
}

RowMatrix from_text(const std::vector<std::string>& rows, char gap) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RowMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged alignment rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c] == gap ? kGap : static_cast<unsigned char>(rows[r][c]);
  }
  return m;
}

std::string strip_gaps(const RowMatrix& m, Eigen::Index r) {
  std::string out;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    if (m(r, c) != kGap) out.push_back(static_cast<char>(m(r, c)));
  return out;
}

}  // namespace msw
