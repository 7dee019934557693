#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "msw/corpus.hpp"

namespace msw {

/// A reference into the corpus: `length` bytes of sequence `seq` from `start`.
struct EdgeLabel {
  std::uint32_t seq = 0;
  std::uint32_t start = 0;
  std::uint32_t length = 0;
};

/// Leaf label: the suffix of sequence `seq` starting at `start`.
struct Occurrence {
  std::uint32_t seq = 0;
  std::uint32_t start = 0;
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

enum class GstBuilder {
  ukkonen,
  naive,  ///< quadratic insertion of every suffix; used as a test oracle
};

/// Generalized suffix tree over all sequences of a corpus.
///
/// Every suffix ends at a branching node and the leaf hangs off that node
/// with an unlabelled edge, so e.g. the tree of "Banana" has the root, six
/// further branching nodes and six leaves. Sequence terminators are used
/// during construction only and never show up in edge labels.
///
/// Nodes are stored in depth-first preorder, children visited in ascending
/// order of the first byte of their edge label. A node's direct leaves come
/// before the leaves of its children, so the leaves below a node form the
/// contiguous range [leaf_begin, subtree_leaf_end) of leaves().
///
/// The tree refers to the corpus bytes and must not outlive the corpus.
class Gst {
 public:
  struct Node {
    EdgeLabel label;               // incoming edge; empty for the root
    std::uint32_t depth = 0;       // length of the path label
    std::int32_t parent = -1;
    std::uint32_t child_begin = 0;  // into child_ids()
    std::uint32_t child_end = 0;
    std::uint32_t leaf_begin = 0;  // direct leaves, into leaves()
    std::uint32_t leaf_end = 0;
    std::uint32_t subtree_end = 0;       // nodes [id, subtree_end) form the subtree
    std::uint32_t subtree_leaf_end = 0;  // leaves [leaf_begin, subtree_leaf_end)
  };

  static constexpr std::uint32_t root = 0;

  explicit Gst(const Corpus& corpus, GstBuilder builder = GstBuilder::ukkonen);

  const Corpus& corpus() const noexcept { return *corpus_; }
  std::size_t sequence_count() const noexcept { return corpus_->size(); }

  /// All branching nodes including the root.
  std::size_t branching_count() const noexcept { return nodes_.size(); }
  std::size_t leaf_count() const noexcept { return leaves_.size(); }

  const Node& node(std::uint32_t id) const { return nodes_[id]; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::span<const std::uint32_t> children(std::uint32_t id) const;
  std::span<const Occurrence> direct_leaves(std::uint32_t id) const;
  std::span<const Occurrence> subtree_leaves(std::uint32_t id) const;
  const std::vector<Occurrence>& leaves() const noexcept { return leaves_; }

  std::string_view edge_label(std::uint32_t id) const;
  std::string_view path_label(std::uint32_t id) const;

  /// Child whose edge label starts with `symbol`, or -1.
  std::int64_t find_child(std::uint32_t id, unsigned char symbol) const;

  /// Colour set as a bitset with one bit per sequence id.
  std::span<const std::uint64_t> colours(std::uint32_t id) const;
  bool has_colour(std::uint32_t id, std::size_t seq) const;
  std::size_t colour_count(std::uint32_t id) const;
  bool fully_coloured(std::uint32_t id) const { return colour_count(id) == sequence_count(); }

 private:
  const Corpus* corpus_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> child_ids_;
  std::vector<Occurrence> leaves_;
  std::size_t colour_words_ = 0;
  std::vector<std::uint64_t> colour_bits_;
};

inline Gst build_gst(const Corpus& corpus, GstBuilder builder = GstBuilder::ukkonen) {
  return Gst(corpus, builder);
}

/// Path labels of every non-root fully coloured branching node.
std::set<std::string> fully_coloured_values(const Gst& gst);

/// A common sub-word together with all of its occurrences. `occurrences[s]`
/// holds the strictly increasing start indices in sequence s.
struct MultiSubWord {
  std::string value;
  std::vector<std::vector<std::uint32_t>> occurrences;

  std::size_t length() const noexcept { return value.size(); }
  std::size_t occurrence_count() const noexcept;
  friend bool operator==(const MultiSubWord&, const MultiSubWord&) = default;
};

using MswCollection = std::vector<MultiSubWord>;

/// One multi sub-word per fully coloured branching node, in tree preorder.
MswCollection extract_msws(const Gst& gst);

/// Number of distinct common sub-sequences (one start per sequence) the
/// collection encodes: sum over MSWs of the product of per-sequence counts.
boost::multiprecision::cpp_int count_combinations(const MswCollection& msws);

/// Printable form of a byte string: printable ASCII verbatim, anything else
/// as \xHH.
std::string printable(std::string_view bytes);

/// Bracket notation, e.g. "[a – {0@1 0@3 0@5 1@3 1@6}]".
std::string to_string(const MultiSubWord& msw);

}  // namespace msw
