#include "msw/gst.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include <absl/container/flat_hash_map.h>

namespace msw {

namespace {

// Plain suffix tree over the concatenation s_0 $_0 s_1 $_1 ... where the
// terminator $_i is the symbol 256 + i. Leaves have end == kOpen.
struct Skeleton {
  static constexpr std::int32_t kOpen = -1;
  struct SNode {
    std::int32_t start;
    std::int32_t end;
    std::int32_t link = 0;  // suffix link, Ukkonen only
  };

  std::vector<std::int32_t> text;
  std::vector<std::uint32_t> seq_of;     // text position -> sequence id
  std::vector<std::uint32_t> seq_begin;  // sequence id -> first text position
  std::vector<std::uint32_t> seq_term;   // sequence id -> position of its terminator
  std::vector<SNode> nodes;
  absl::flat_hash_map<std::uint64_t, std::int32_t> edges;

  explicit Skeleton(const Corpus& corpus) {
    text.reserve(corpus.total_length() + corpus.size());
    for (const auto& s : corpus) {
      seq_begin.push_back(static_cast<std::uint32_t>(text.size()));
      for (std::size_t i = 0; i < s.length(); ++i) text.push_back(s[i]);
      seq_term.push_back(static_cast<std::uint32_t>(text.size()));
      text.push_back(256 + static_cast<std::int32_t>(s.id()));
    }
    seq_of.resize(text.size());
    for (std::size_t i = 0; i < corpus.size(); ++i)
      std::fill(seq_of.begin() + seq_begin[i],
                seq_of.begin() + seq_begin[i] + corpus[i].length() + 1,
                static_cast<std::uint32_t>(i));
    nodes.reserve(2 * text.size() + 1);
    edges.reserve(2 * text.size() + 1);
    nodes.push_back({0, 0, 0});
  }

  static std::uint64_t key(std::int32_t node, std::int32_t symbol) {
    return (static_cast<std::uint64_t>(node) << 32) | static_cast<std::uint32_t>(symbol);
  }
  std::int32_t find(std::int32_t node, std::int32_t symbol) const {
    auto it = edges.find(key(node, symbol));
    return it == edges.end() ? -1 : it->second;
  }
  void set(std::int32_t node, std::int32_t symbol, std::int32_t child) {
    edges[key(node, symbol)] = child;
  }
  std::int32_t add(std::int32_t start, std::int32_t end) {
    nodes.push_back({start, end, 0});
    return static_cast<std::int32_t>(nodes.size() - 1);
  }
  bool is_terminator(std::int32_t pos) const { return text[pos] >= 256; }
  std::int32_t terminator_of(std::int32_t pos) const {
    return static_cast<std::int32_t>(seq_term[seq_of[pos]]);
  }
};

void build_ukkonen(Skeleton& st) {
  const auto& t = st.text;
  const auto n = static_cast<std::int32_t>(t.size());
  auto add = [&](std::int32_t start, std::int32_t end) { return st.add(start, end); };
  auto link = [&](std::int32_t v) -> std::int32_t& { return st.nodes[v].link; };

  std::int32_t active_node = 0, active_edge = 0, active_len = 0, remainder = 0;
  for (std::int32_t pos = 0; pos < n; ++pos) {
    const std::int32_t sym = t[pos];
    ++remainder;
    std::int32_t last_new = -1;
    while (remainder > 0) {
      if (active_len == 0) active_edge = pos;
      const std::int32_t child = st.find(active_node, t[active_edge]);
      if (child < 0) {
        st.set(active_node, t[active_edge], add(pos, Skeleton::kOpen));
        if (last_new >= 0) {
          link(last_new) = active_node;
          last_new = -1;
        }
      } else {
        const auto& c = st.nodes[child];
        const std::int32_t len = (c.end == Skeleton::kOpen ? pos + 1 : c.end) - c.start;
        if (active_len >= len) {
          active_edge += len;
          active_len -= len;
          active_node = child;
          continue;
        }
        if (t[c.start + active_len] == sym) {
          if (last_new >= 0 && active_node != 0) {
            link(last_new) = active_node;
            last_new = -1;
          }
          ++active_len;
          break;
        }
        const std::int32_t child_start = c.start;
        const std::int32_t split = add(child_start, child_start + active_len);
        st.set(active_node, t[active_edge], split);
        st.set(split, sym, add(pos, Skeleton::kOpen));
        st.nodes[child].start = child_start + active_len;
        st.set(split, t[child_start + active_len], child);
        if (last_new >= 0) link(last_new) = split;
        last_new = split;
      }
      --remainder;
      if (active_node == 0 && active_len > 0) {
        --active_len;
        active_edge = pos - remainder + 1;
      } else if (active_node != 0) {
        active_node = link(active_node);
      }
    }
  }
}

void build_naive(Skeleton& st) {
  const auto& t = st.text;
  const auto n = static_cast<std::int32_t>(t.size());
  for (std::int32_t p = 0; p < n; ++p) {
    std::int32_t node = 0, i = p;
    for (;;) {
      const std::int32_t child = st.find(node, t[i]);
      if (child < 0) {
        st.set(node, t[i], st.add(i, Skeleton::kOpen));
        break;
      }
      const std::int32_t start = st.nodes[child].start;
      const std::int32_t end = st.nodes[child].end == Skeleton::kOpen ? n : st.nodes[child].end;
      std::int32_t k = 0;
      while (start + k < end && t[start + k] == t[i + k]) ++k;
      if (start + k == end) {
        node = child;
        i += k;
        continue;
      }
      // The last symbol is a unique terminator, so no suffix ends mid-edge.
      const std::int32_t split = st.add(start, start + k);
      st.set(node, t[start], split);
      st.nodes[child].start = start + k;
      st.set(split, t[start + k], child);
      st.set(split, t[i + k], st.add(i + k, Skeleton::kOpen));
      break;
    }
  }
}

}  // namespace

Gst::Gst(const Corpus& corpus, GstBuilder builder) : corpus_(&corpus) {
  if (corpus.empty()) throw std::invalid_argument("cannot build a suffix tree over an empty corpus");

  Skeleton st(corpus);
  if (builder == GstBuilder::ukkonen)
    build_ukkonen(st);
  else
    build_naive(st);

  // Per-node child lists sorted by first symbol; terminators sort last.
  struct Edge {
    std::int32_t symbol;
    std::int32_t child;
    bool operator<(const Edge& o) const { return symbol < o.symbol; }
  };
  std::vector<std::uint32_t> kid_begin(st.nodes.size() + 1, 0);
  for (const auto& e : st.edges) ++kid_begin[(e.first >> 32) + 1];
  for (std::size_t v = 1; v < kid_begin.size(); ++v) kid_begin[v] += kid_begin[v - 1];
  std::vector<Edge> kid_edges(st.edges.size());
  {
    std::vector<std::uint32_t> fill(kid_begin.begin(), kid_begin.end() - 1);
    for (const auto& [k, child] : st.edges)
      kid_edges[fill[k >> 32]++] = {static_cast<std::int32_t>(k & 0xffffffffu), child};
  }
  st.edges = {};
  for (std::size_t v = 0; v + 1 < kid_begin.size(); ++v)
    std::sort(kid_edges.begin() + kid_begin[v], kid_edges.begin() + kid_begin[v + 1]);
  auto kids = [&](std::int32_t v) {
    return std::span<const Edge>(kid_edges.data() + kid_begin[v], kid_begin[v + 1] - kid_begin[v]);
  };

  auto to_label = [&](std::int32_t start, std::int32_t end) {
    const auto seq = st.seq_of[start];
    return EdgeLabel{seq, static_cast<std::uint32_t>(start) - st.seq_begin[seq],
                     static_cast<std::uint32_t>(end - start)};
  };
  auto to_occurrence = [&](std::int32_t suffix_pos) {
    const auto seq = st.seq_of[suffix_pos];
    return Occurrence{seq, static_cast<std::uint32_t>(suffix_pos) - st.seq_begin[seq]};
  };

  nodes_.reserve(st.nodes.size() + corpus.total_length());
  leaves_.reserve(corpus.total_length());

  struct Frame {
    std::int32_t skel;
    std::uint32_t gst;
    std::size_t next;
  };
  std::vector<Frame> stack;

  // Opens a branching node for an internal skeleton node: records its direct
  // leaves (children reached through a terminator) and pushes a frame for
  // its byte-labelled children.
  auto open = [&](std::int32_t skel, EdgeLabel label, std::uint32_t depth, std::int32_t parent) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    Node g;
    g.label = label;
    g.depth = depth;
    g.parent = parent;
    g.leaf_begin = static_cast<std::uint32_t>(leaves_.size());
    for (const auto& e : kids(skel)) {
      if (e.symbol < 256) continue;
      const std::int32_t suffix_pos = st.nodes[e.child].start - static_cast<std::int32_t>(depth);
      if (!st.is_terminator(suffix_pos)) leaves_.push_back(to_occurrence(suffix_pos));
    }
    g.leaf_end = static_cast<std::uint32_t>(leaves_.size());
    nodes_.push_back(g);
    stack.push_back({skel, id, 0});
  };

  open(0, EdgeLabel{}, 0, -1);
  while (!stack.empty()) {
    auto& f = stack.back();
    const auto ks = kids(f.skel);
    if (f.next == ks.size() || ks[f.next].symbol >= 256) {
      nodes_[f.gst].subtree_end = static_cast<std::uint32_t>(nodes_.size());
      nodes_[f.gst].subtree_leaf_end = static_cast<std::uint32_t>(leaves_.size());
      stack.pop_back();
      continue;
    }
    const std::int32_t c = ks[f.next++].child;
    const std::uint32_t parent = f.gst;
    const std::uint32_t depth = nodes_[parent].depth;
    const auto& sn = st.nodes[c];
    if (sn.end != Skeleton::kOpen) {
      open(c, to_label(sn.start, sn.end), depth + static_cast<std::uint32_t>(sn.end - sn.start),
           static_cast<std::int32_t>(parent));
      continue;
    }
    // Leaf edge "beta $_i ...": a branching node for beta carrying one leaf.
    const std::int32_t term = st.terminator_of(sn.start);
    Node g;
    g.label = to_label(sn.start, term);
    g.depth = depth + static_cast<std::uint32_t>(term - sn.start);
    g.parent = static_cast<std::int32_t>(parent);
    g.leaf_begin = static_cast<std::uint32_t>(leaves_.size());
    leaves_.push_back(to_occurrence(sn.start - static_cast<std::int32_t>(depth)));
    g.leaf_end = g.subtree_leaf_end = static_cast<std::uint32_t>(leaves_.size());
    g.subtree_end = static_cast<std::uint32_t>(nodes_.size() + 1);
    nodes_.push_back(g);
  }

  // Child lists: preorder ids grouped by parent keep ascending symbol order.
  std::vector<std::uint32_t> count(nodes_.size() + 1, 0);
  for (std::size_t v = 1; v < nodes_.size(); ++v) ++count[nodes_[v].parent + 1];
  for (std::size_t v = 1; v <= nodes_.size(); ++v) count[v] += count[v - 1];
  child_ids_.resize(nodes_.size() - 1);
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    nodes_[v].child_begin = count[v];
    nodes_[v].child_end = count[v];
  }
  for (std::size_t v = 1; v < nodes_.size(); ++v)
    child_ids_[nodes_[nodes_[v].parent].child_end++] = static_cast<std::uint32_t>(v);

  // Colour sets, children before parents.
  colour_words_ = (corpus.size() + 63) / 64;
  colour_bits_.assign(nodes_.size() * colour_words_, 0);
  for (std::size_t v = nodes_.size(); v-- > 0;) {
    std::uint64_t* bits = colour_bits_.data() + v * colour_words_;
    for (auto leaf : direct_leaves(static_cast<std::uint32_t>(v)))
      bits[leaf.seq / 64] |= std::uint64_t{1} << (leaf.seq % 64);
    if (v == 0) break;
    std::uint64_t* up = colour_bits_.data() + nodes_[v].parent * colour_words_;
    for (std::size_t w = 0; w < colour_words_; ++w) up[w] |= bits[w];
  }
}

std::span<const std::uint32_t> Gst::children(std::uint32_t id) const {
  const auto& n = nodes_[id];
  return {child_ids_.data() + n.child_begin, n.child_end - n.child_begin};
}

std::span<const Occurrence> Gst::direct_leaves(std::uint32_t id) const {
  const auto& n = nodes_[id];
  return {leaves_.data() + n.leaf_begin, n.leaf_end - n.leaf_begin};
}

std::span<const Occurrence> Gst::subtree_leaves(std::uint32_t id) const {
  const auto& n = nodes_[id];
  return {leaves_.data() + n.leaf_begin, n.subtree_leaf_end - n.leaf_begin};
}

std::string_view Gst::edge_label(std::uint32_t id) const {
  const auto& l = nodes_[id].label;
  return std::string_view(corpus_->sequences()[l.seq].bytes()).substr(l.start, l.length);
}

std::string_view Gst::path_label(std::uint32_t id) const {
  const auto& n = nodes_[id];
  const auto end = n.label.start + n.label.length;
  return std::string_view(corpus_->sequences()[n.label.seq].bytes()).substr(end - n.depth, n.depth);
}

std::int64_t Gst::find_child(std::uint32_t id, unsigned char symbol) const {
  for (auto c : children(id))
    if (static_cast<unsigned char>(edge_label(c).front()) == symbol) return c;
  return -1;
}

std::span<const std::uint64_t> Gst::colours(std::uint32_t id) const {
  return {colour_bits_.data() + id * colour_words_, colour_words_};
}

bool Gst::has_colour(std::uint32_t id, std::size_t seq) const {
  return (colours(id)[seq / 64] >> (seq % 64)) & 1u;
}

std::size_t Gst::colour_count(std::uint32_t id) const {
  std::size_t total = 0;
  for (auto w : colours(id)) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::set<std::string> fully_coloured_values(const Gst& gst) {
  std::set<std::string> out;
  for (std::uint32_t v = 1; v < gst.branching_count(); ++v)
    if (gst.fully_coloured(v)) out.emplace(gst.path_label(v));
  return out;
}

std::size_t MultiSubWord::occurrence_count() const noexcept {
  std::size_t total = 0;
  for (const auto& o : occurrences) total += o.size();
  return total;
}

MswCollection extract_msws(const Gst& gst) {
  MswCollection out;
  for (std::uint32_t v = 1; v < gst.branching_count(); ++v) {
    if (!gst.fully_coloured(v)) continue;
    MultiSubWord msw{std::string(gst.path_label(v)),
                     std::vector<std::vector<std::uint32_t>>(gst.sequence_count())};
    for (auto leaf : gst.subtree_leaves(v)) msw.occurrences[leaf.seq].push_back(leaf.start);
    for (auto& o : msw.occurrences) std::sort(o.begin(), o.end());
    out.push_back(std::move(msw));
  }
  return out;
}

boost::multiprecision::cpp_int count_combinations(const MswCollection& msws) {
  boost::multiprecision::cpp_int total = 0;
  for (const auto& m : msws) {
    boost::multiprecision::cpp_int product = 1;
    for (const auto& o : m.occurrences) product *= o.size();
    total += product;
  }
  return total;
}

std::string printable(std::string_view bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  for (unsigned char c : bytes) {
    if (c >= 0x20 && c < 0x7f && c != '\\') {
      out.push_back(static_cast<char>(c));
    } else {
      out += "\\x";
      out.push_back(digits[c >> 4]);
      out.push_back(digits[c & 0xf]);
    }
  }
  return out;
}

std::string to_string(const MultiSubWord& msw) {
  std::string out = "[" + printable(msw.value) + " – {";
  bool first = true;
  for (std::size_t s = 0; s < msw.occurrences.size(); ++s)
    for (auto start : msw.occurrences[s]) {
      if (!first) out.push_back(' ');
      first = false;
      out += std::to_string(s) + "@" + std::to_string(start);
    }
  return out + "}]";
}

}  // namespace msw
