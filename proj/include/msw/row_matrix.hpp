#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace msw {

/// A gapped alignment: one row per sequence, one column per alignment
/// position. Cells hold byte values 0..255 or kGap, so the gap display
/// character never collides with sequence content.
using RowMatrix = Eigen::Matrix<std::int16_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr std::int16_t kGap = -1;

/// Text rows with `gap` standing in for gap cells.
std::vector<std::string> to_text(const RowMatrix& m, char gap = '*');

/// Inverse of to_text. Every occurrence of `gap` becomes a gap cell. Throws
/// std::invalid_argument on ragged rows.
RowMatrix from_text(const std::vector<std::string>& rows, char gap = '*');

/// Row r with gap cells removed.
std::string strip_gaps(const RowMatrix& m, Eigen::Index r);

}  // namespace msw
