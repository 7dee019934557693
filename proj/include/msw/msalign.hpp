#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msw/corpus.hpp"
#include "msw/gst.hpp"
#include "msw/row_matrix.hpp"

namespace msw {

/// Per-sequence half-open interval [lo[s], hi[s]).
struct Segment {
  std::vector<std::uint32_t> lo;
  std::vector<std::uint32_t> hi;

  static Segment whole(const Corpus& corpus);
  bool contains(std::size_t seq, std::uint32_t start, std::size_t length) const {
    return start >= lo[seq] && start + length <= hi[seq];
  }
};

/// One chosen common sub-sequence: a value and one start per sequence.
struct Anchor {
  std::string value;
  std::vector<std::uint32_t> starts;

  std::size_t length() const noexcept { return value.size(); }
  std::uint32_t end(std::size_t seq) const {
    return starts[seq] + static_cast<std::uint32_t>(value.size());
  }
  friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// Anchors in left-to-right order; disjoint and identically ordered in every
/// sequence.
struct AnchorChain {
  std::vector<Anchor> anchors;

  std::size_t size() const noexcept { return anchors.size(); }
  bool empty() const noexcept { return anchors.empty(); }
  friend bool operator==(const AnchorChain&, const AnchorChain&) = default;
};

enum class Strategy {
  biggest_left_most,  ///< longest MSW, left-most occurrence in each sequence
  min_variance,       ///< most positionally consistent combination among the n largest MSWs
};

struct StrategyConfig {
  Strategy kind = Strategy::biggest_left_most;
  std::size_t n_largest = 9;
  std::size_t min_anchor_len = 1;
  std::size_t combination_cap = 10'000;

  void validate() const;
};

struct AlignStats {
  std::size_t msw_count = 0;           // MSWs extracted from the tree
  std::size_t skipped_candidates = 0;  // min_variance candidates over the combination cap
  std::size_t fallbacks = 0;           // selections where every candidate was skipped
};

/// Keeps occurrences lying entirely inside the segment; drops MSWs that lose
/// every occurrence in some sequence. This also removes MSWs crossing over an
/// anchor once the segment is one side of it.
MswCollection restrict_to(const MswCollection& msws, const Segment& segment);

/// Picks the next anchor, or nothing when no MSW of at least
/// cfg.min_anchor_len remains.
///
/// biggest_left_most: the longest MSW (first in collection order on ties),
/// starting at its smallest in-segment occurrence in each sequence.
///
/// min_variance: among the cfg.n_largest longest MSWs, enumerate every
/// combination of one occurrence per sequence and score it by the variance of
/// start/sequence_length divided by the value length. Lowest score wins; ties
/// go to the longer value, then the lexicographically smaller one. An MSW with
/// more than cfg.combination_cap combinations is skipped; if every candidate
/// is skipped the biggest_left_most choice is used.
std::optional<Anchor> select_anchor(const MswCollection& msws, const Segment& segment,
                                    const StrategyConfig& cfg, const Corpus& corpus,
                                    AlignStats* stats = nullptr);

/// Drops occurrences that lie within the anchor's interval in their
/// sequence, then MSWs left without any occurrence in some sequence.
MswCollection remove_full_overlaps(const MswCollection& msws, const Anchor& anchor);

/// Shortens occurrences straddling an anchor boundary to the part outside the
/// anchor and moves them to the MSW with the shortened value, creating it if
/// needed. An occurrence sticking out on both sides keeps its longer
/// protrusion (the left one on ties). MSWs left with no occurrences at all
/// are dropped; incomplete ones are left for restrict_to.
MswCollection trim_partial_overlaps(const MswCollection& msws, const Anchor& anchor);

/// Divide-and-conquer anchor alignment over the corpus's GST.
AnchorChain align(const Corpus& corpus, const StrategyConfig& cfg = {},
                  AlignStats* stats = nullptr);

/// Same, starting from an already extracted MSW collection.
AnchorChain align(const Corpus& corpus, MswCollection msws, const StrategyConfig& cfg,
                  AlignStats* stats = nullptr);

/// Throws std::invalid_argument if the chain does not fit the corpus.
void validate_chain(const Corpus& corpus, const AnchorChain& chain);

/// Anchor columns aligned, residues between anchors left-justified and
/// gap-padded to the widest residue of their region.
RowMatrix render(const Corpus& corpus, const AnchorChain& chain);

/// Regex whose constants are the escaped anchor values, joined by ".*"
/// wherever some sequence has bytes between them. Anchors shorter than
/// cfg.min_anchor_len are dropped unless they are flush with the start or the
/// end of every sequence. The wildcard becomes "[\s\S]*" if a gap would have
/// to span a line terminator.
std::string regex_skeleton(const Corpus& corpus, const AnchorChain& chain,
                           const StrategyConfig& cfg = {});

/// ECMAScript-escaped literal.
std::string regex_escape(std::string_view bytes);

}  // namespace msw
