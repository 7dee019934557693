#include "msw/msalign.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace msw {

Segment Segment::whole(const Corpus& corpus) {
  Segment s;
  s.lo.assign(corpus.size(), 0);
  for (const auto& seq : corpus) s.hi.push_back(static_cast<std::uint32_t>(seq.length()));
  return s;
}

void StrategyConfig::validate() const {
  if (n_largest < 1) throw std::invalid_argument("n_largest must be at least 1");
  if (min_anchor_len < 1) throw std::invalid_argument("min_anchor_len must be at least 1");
  if (combination_cap < 1) throw std::invalid_argument("combination_cap must be at least 1");
}

namespace {

bool complete(const MultiSubWord& m) {
  return std::all_of(m.occurrences.begin(), m.occurrences.end(),
                     [](const auto& o) { return !o.empty(); });
}


struct Interval {
  std::uint32_t lo, hi;
};

}  // namespace

MswCollection restrict_to(const MswCollection& msws, const Segment& segment) {
  MswCollection out;
  out.reserve(msws.size());
  for (const auto& m : msws) {
    MultiSubWord r{m.value, std::vector<std::vector<std::uint32_t>>(m.occurrences.size())};
    bool ok = true;
    for (std::size_t s = 0; s < m.occurrences.size() && ok; ++s) {
      for (auto start : m.occurrences[s])
        if (segment.contains(s, start, m.length())) r.occurrences[s].push_back(start);
      ok = !r.occurrences[s].empty();
    }
    if (ok) out.push_back(std::move(r));
  }
  return out;
}

namespace {

std::optional<Anchor> biggest_left_most(const MswCollection& msws, const Segment& segment,
                                        std::size_t min_len) {
  const MultiSubWord* best = nullptr;
  for (const auto& m : msws)
    if (m.length() >= min_len && (!best || m.length() > best->length())) best = &m;
  if (!best) return std::nullopt;

  Anchor a{best->value, {}};
  for (std::size_t s = 0; s < best->occurrences.size(); ++s) {
    const auto& occ = best->occurrences[s];
    auto it = std::find_if(occ.begin(), occ.end(), [&](std::uint32_t start) {
      return segment.contains(s, start, best->length());
    });
    if (it == occ.end()) return std::nullopt;  // not restricted to this segment
    a.starts.push_back(*it);
  }
  return a;
}

struct Scored {
  double score;
  Anchor anchor;
};

bool better(const Scored& a, const Scored& b) {
  if (a.score != b.score) return a.score < b.score;
  if (a.anchor.length() != b.anchor.length()) return a.anchor.length() > b.anchor.length();
  return a.anchor.value < b.anchor.value;
}

std::optional<Anchor> min_variance(const MswCollection& msws, const Segment& segment,
                                   const StrategyConfig& cfg, const Corpus& corpus,
                                   AlignStats* stats) {
  std::vector<const MultiSubWord*> candidates;
  for (const auto& m : msws)
    if (m.length() >= cfg.min_anchor_len) candidates.push_back(&m);
  if (candidates.empty()) return std::nullopt;
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto* a, const auto* b) { return a->length() > b->length(); });
  if (candidates.size() > cfg.n_largest) candidates.resize(cfg.n_largest);

  const std::size_t n = corpus.size();
  std::optional<Scored> best;
  for (const auto* m : candidates) {
    std::vector<std::vector<std::uint32_t>> occ(n);
    std::size_t combos = 1;
    for (std::size_t s = 0; s < n && combos <= cfg.combination_cap; ++s) {
      for (auto start : m->occurrences[s])
        if (segment.contains(s, start, m->length())) occ[s].push_back(start);
      combos = occ[s].empty() ? 0 : combos * occ[s].size();
      if (combos == 0) break;
    }
    if (combos == 0) continue;
    if (combos > cfg.combination_cap) {
      if (stats) ++stats->skipped_candidates;
      continue;
    }

    std::vector<std::size_t> pick(n, 0);
    std::vector<double> rel(n);
    for (;;) {
      double mean = 0;
      for (std::size_t s = 0; s < n; ++s) {
        rel[s] = static_cast<double>(occ[s][pick[s]]) / static_cast<double>(corpus[s].length());
        mean += rel[s];
      }
      mean /= static_cast<double>(n);
      double var = 0;
      for (double r : rel) var += (r - mean) * (r - mean);
      var /= static_cast<double>(n);

      Scored cur{var / static_cast<double>(m->length()), Anchor{m->value, {}}};
      if (!best || better(cur, *best)) {
        for (std::size_t s = 0; s < n; ++s) cur.anchor.starts.push_back(occ[s][pick[s]]);
        best = std::move(cur);
      }

      std::size_t s = 0;
      while (s < n && ++pick[s] == occ[s].size()) pick[s++] = 0;
      if (s == n) break;
    }
  }
  if (best) return std::move(best->anchor);
  if (stats) ++stats->fallbacks;
  return biggest_left_most(msws, segment, cfg.min_anchor_len);
}

}  // namespace

std::optional<Anchor> select_anchor(const MswCollection& msws, const Segment& segment,
                                    const StrategyConfig& cfg, const Corpus& corpus,
                                    AlignStats* stats) {
  if (cfg.kind == Strategy::biggest_left_most)
    return biggest_left_most(msws, segment, cfg.min_anchor_len);
  return min_variance(msws, segment, cfg, corpus, stats);
}

MswCollection remove_full_overlaps(const MswCollection& msws, const Anchor& anchor) {
  MswCollection out;
  out.reserve(msws.size());
  for (const auto& m : msws) {
    MultiSubWord r{m.value, m.occurrences};
    for (std::size_t s = 0; s < r.occurrences.size(); ++s) {
      const std::uint32_t a = anchor.starts[s], b = anchor.end(s);
      std::erase_if(r.occurrences[s], [&](std::uint32_t start) {
        return start >= a && start + m.length() <= b;
      });
    }
    if (complete(r)) out.push_back(std::move(r));
  }
  return out;
}

MswCollection trim_partial_overlaps(const MswCollection& msws, const Anchor& anchor) {
  MswCollection out = msws;
  struct Moved {
    std::string value;
    std::size_t seq;
    std::uint32_t start;
  };
  std::vector<Moved> moved;

  for (auto& m : out) {
    const auto len = static_cast<std::uint32_t>(m.length());
    for (std::size_t s = 0; s < m.occurrences.size(); ++s) {
      const std::uint32_t a = anchor.starts[s], b = anchor.end(s);
      std::erase_if(m.occurrences[s], [&](std::uint32_t start) {
        const std::uint32_t end = start + len;
        if (end <= a || start >= b) return false;    // disjoint
        if (start >= a && end <= b) return false;    // contained, not ours to handle
        const std::uint32_t left = a > start ? a - start : 0;
        const std::uint32_t right = end > b ? end - b : 0;
        if (left >= right)
          moved.push_back({m.value.substr(0, left), s, start});
        else
          moved.push_back({m.value.substr(len - right), s, b});
        return true;
      });
    }
  }

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < out.size(); ++i) index.emplace(out[i].value, i);
  std::vector<std::size_t> touched;
  for (auto& mv : moved) {
    auto [it, fresh] = index.emplace(mv.value, out.size());
    if (fresh)
      out.push_back({mv.value, std::vector<std::vector<std::uint32_t>>(anchor.starts.size())});
    out[it->second].occurrences[mv.seq].push_back(mv.start);
    touched.push_back(it->second);
  }
  for (auto i : touched)
    for (auto& o : out[i].occurrences) {
      std::sort(o.begin(), o.end());
      o.erase(std::unique(o.begin(), o.end()), o.end());
    }

  std::erase_if(out, [](const MultiSubWord& m) { return m.occurrence_count() == 0; });
  return out;
}

AnchorChain align(const Corpus& corpus, const StrategyConfig& cfg, AlignStats* stats) {
  if (corpus.size() < 2) throw std::invalid_argument("alignment needs at least 2 sequences");
  const Gst gst(corpus);
  return align(corpus, extract_msws(gst), cfg, stats);
}

AnchorChain align(const Corpus& corpus, MswCollection msws, const StrategyConfig& cfg,
                  AlignStats* stats) {
  if (corpus.size() < 2) throw std::invalid_argument("alignment needs at least 2 sequences");
  cfg.validate();
  if (stats) stats->msw_count = msws.size();

  struct Work {
    Segment segment;
    MswCollection msws;
  };
  const Segment whole = Segment::whole(corpus);
  std::vector<Work> stack;
  stack.push_back({whole, restrict_to(msws, whole)});
  msws.clear();

  AnchorChain chain;
  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    auto anchor = select_anchor(w.msws, w.segment, cfg, corpus, stats);
    if (!anchor) continue;

    auto rest = trim_partial_overlaps(remove_full_overlaps(w.msws, *anchor), *anchor);
    Segment left = w.segment, right = w.segment;
    for (std::size_t s = 0; s < corpus.size(); ++s) {
      left.hi[s] = anchor->starts[s];
      right.lo[s] = anchor->end(s);
    }
    auto right_msws = restrict_to(rest, right);
    auto left_msws = restrict_to(rest, left);
    if (!right_msws.empty()) stack.push_back({std::move(right), std::move(right_msws)});
    if (!left_msws.empty()) stack.push_back({std::move(left), std::move(left_msws)});
    chain.anchors.push_back(std::move(*anchor));
  }
  // Anchors are disjoint and consistently ordered, so any sequence orders them.
  std::sort(chain.anchors.begin(), chain.anchors.end(),
            [](const Anchor& a, const Anchor& b) { return a.starts[0] < b.starts[0]; });
  return chain;
}

void validate_chain(const Corpus& corpus, const AnchorChain& chain) {
  std::vector<std::uint32_t> cursor(corpus.size(), 0);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const auto& a = chain.anchors[k];
    if (a.value.empty()) throw std::invalid_argument("anchor " + std::to_string(k) + " is empty");
    if (a.starts.size() != corpus.size())
      throw std::invalid_argument("anchor " + std::to_string(k) + " has wrong number of starts");
    for (std::size_t s = 0; s < corpus.size(); ++s) {
      if (a.starts[s] < cursor[s])
        throw std::invalid_argument("anchor " + std::to_string(k) + " overlaps or crosses in sequence " +
                                    std::to_string(s));
      if (a.end(s) > corpus[s].length() ||
          corpus[s].bytes().compare(a.starts[s], a.length(), a.value) != 0)
        throw std::invalid_argument("anchor " + std::to_string(k) + " does not match sequence " +
                                    std::to_string(s));
      cursor[s] = a.end(s);
    }
  }
}

RowMatrix render(const Corpus& corpus, const AnchorChain& chain) {
  validate_chain(corpus, chain);
  const std::size_t n = corpus.size();

  // Region k is the residue before anchor k (k == size(): after the last).
  auto residue = [&](std::size_t k, std::size_t s) -> Interval {
    const std::uint32_t lo = k == 0 ? 0 : chain.anchors[k - 1].end(s);
    const std::uint32_t hi =
        k == chain.size() ? static_cast<std::uint32_t>(corpus[s].length()) : chain.anchors[k].starts[s];
    return {lo, hi};
  };
  std::vector<std::uint32_t> width(chain.size() + 1, 0);
  Eigen::Index cols = 0;
  for (std::size_t k = 0; k <= chain.size(); ++k) {
    for (std::size_t s = 0; s < n; ++s) {
      auto r = residue(k, s);
      width[k] = std::max(width[k], r.hi - r.lo);
    }
    cols += width[k] + (k < chain.size() ? chain.anchors[k].length() : 0);
  }

  RowMatrix m = RowMatrix::Constant(static_cast<Eigen::Index>(n), cols, kGap);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& bytes = corpus[s];
    Eigen::Index col = 0;
    for (std::size_t k = 0; k <= chain.size(); ++k) {
      auto r = residue(k, s);
      for (auto i = r.lo; i < r.hi; ++i) m(static_cast<Eigen::Index>(s), col + (i - r.lo)) = bytes[i];
      col += width[k];
      if (k == chain.size()) break;
      const auto& a = chain.anchors[k];
      for (std::size_t i = 0; i < a.length(); ++i)
        m(static_cast<Eigen::Index>(s), col + static_cast<Eigen::Index>(i)) =
            static_cast<unsigned char>(a.value[i]);
      col += static_cast<Eigen::Index>(a.length());
    }
  }
  return m;
}

std::string regex_escape(std::string_view bytes) {
  static constexpr std::string_view special = "\\^$.|?*+()[]{}";
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  for (unsigned char c : bytes) {
    if (special.find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back('\\');
      out.push_back(static_cast<char>(c));
    } else if (c >= 0x20 && c < 0x7f) {
      out.push_back(static_cast<char>(c));
    } else {
      out += "\\x";
      out.push_back(digits[c >> 4]);
      out.push_back(digits[c & 0xf]);
    }
  }
  return out;
}

std::string regex_skeleton(const Corpus& corpus, const AnchorChain& chain,
                           const StrategyConfig& cfg) {
  validate_chain(corpus, chain);
  const std::size_t n = corpus.size();
  std::vector<const Anchor*> kept;
  for (const auto& a : chain.anchors) {
    bool flush_left = true, flush_right = true;
    for (std::size_t s = 0; s < n; ++s) {
      flush_left = flush_left && a.starts[s] == 0;
      flush_right = flush_right && a.end(s) == corpus[s].length();
    }
    if (a.length() >= cfg.min_anchor_len || flush_left || flush_right) kept.push_back(&a);
  }

  // Region k lies before kept anchor k.
  bool multiline = false;
  std::vector<bool> gap(kept.size() + 1, false);
  for (std::size_t k = 0; k <= kept.size(); ++k)
    for (std::size_t s = 0; s < n; ++s) {
      const std::uint32_t lo = k == 0 ? 0 : kept[k - 1]->end(s);
      const std::uint32_t hi =
          k == kept.size() ? static_cast<std::uint32_t>(corpus[s].length()) : kept[k]->starts[s];
      if (hi > lo) gap[k] = true;
      const auto residue = std::string_view(corpus[s].bytes()).substr(lo, hi - lo);
      if (residue.find_first_of("\n\r") != std::string_view::npos) multiline = true;
    }

  const std::string wildcard = multiline ? "[\\s\\S]*" : ".*";
  std::string out;
  for (std::size_t k = 0; k <= kept.size(); ++k) {
    if (gap[k]) out += wildcard;
    if (k < kept.size()) out += regex_escape(kept[k]->value);
  }
  return out;
}

}  // namespace msw
