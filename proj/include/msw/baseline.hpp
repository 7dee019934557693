#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "msw/corpus.hpp"
#include "msw/row_matrix.hpp"

namespace msw {

/// Linear gap scoring. The defaults are used for similarity runs; distance()
/// makes the negated optimal score equal to the unit-cost edit distance.
struct Scoring {
  int match = 1;
  int mismatch = -1;
  int gap = -2;

  static constexpr Scoring distance() { return {0, -1, -1}; }
};

/// Two gapped rows and the score of the alignment.
struct PairwiseAlignment {
  RowMatrix rows;  // 2 x columns
  long score = 0;
};

/// Unit-cost edit distance.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Global alignment. Ties in the traceback prefer the diagonal, then a gap in
/// `b`, then a gap in `a`.
PairwiseAlignment needleman_wunsch(std::string_view a, std::string_view b,
                                   const Scoring& scoring = {});

using DistanceMatrix = Eigen::MatrixXd;

/// Called once per unordered pair (i, j), i < j, as it is computed.
using PairHook = std::function<void(std::size_t, std::size_t)>;

/// d(i, j) = levenshtein(i, j) / max(len_i, len_j) over all n(n-1)/2 pairs.
DistanceMatrix similarity_matrix(const Corpus& corpus, const PairHook& on_pair = {});

/// Rooted binary guide tree. Nodes [0, n) are the leaves (node i is sequence
/// i), joins follow in creation order and the last node is the root.
struct GuideTree {
  struct Node {
    std::int32_t left = -1;
    std::int32_t right = -1;
    double left_length = 0;
    double right_length = 0;
  };
  std::vector<Node> nodes;
  std::size_t leaf_count = 0;

  std::size_t root() const noexcept { return nodes.size() - 1; }
  bool is_leaf(std::size_t id) const noexcept { return id < leaf_count; }
  /// Leaf ids under `id`, left to right.
  std::vector<std::size_t> leaves(std::size_t id) const;
};

/// Saitou-Nei neighbour joining. Among pairs with equal Q the pair with the
/// smaller distance joins first, then the smallest index pair.
GuideTree build_guide_tree(const DistanceMatrix& distances);

/// Profile-profile alignment up the guide tree. Two columns score the mean
/// pairwise score of their cells (gap vs residue costs `gap`, gap vs gap 0).
/// Gaps once inserted are never removed. Rows come back in corpus order.
RowMatrix progressive_align(const Corpus& corpus, const GuideTree& tree,
                            const Scoring& scoring = {});

/// similarity_matrix, build_guide_tree and progressive_align in one call.
RowMatrix clustalw_lite(const Corpus& corpus, const Scoring& scoring = {});

}  // namespace msw
