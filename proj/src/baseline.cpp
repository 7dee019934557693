#include "msw/baseline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace msw {

namespace {

enum class Step : std::uint8_t { diag, up, left };

/// Fills the DP table and returns the traceback, first step first. `up`
/// consumes an element of the first input against a gap.
template <typename Scalar, typename Pair, typename GapFirst, typename GapSecond>
std::pair<std::vector<Step>, Scalar> global_path(Eigen::Index na, Eigen::Index nb, Pair&& pair,
                                                 GapFirst&& gap_first, GapSecond&& gap_second) {
  using Table = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Table h(na + 1, nb + 1);
  h(0, 0) = 0;
  for (Eigen::Index i = 1; i <= na; ++i) h(i, 0) = h(i - 1, 0) + gap_first(i - 1);
  for (Eigen::Index j = 1; j <= nb; ++j) h(0, j) = h(0, j - 1) + gap_second(j - 1);
  for (Eigen::Index j = 1; j <= nb; ++j)
    for (Eigen::Index i = 1; i <= na; ++i)
      h(i, j) = std::max({h(i - 1, j - 1) + pair(i - 1, j - 1), h(i - 1, j) + gap_first(i - 1),
                          h(i, j - 1) + gap_second(j - 1)});

  std::vector<Step> path;
  path.reserve(static_cast<std::size_t>(na + nb));
  Eigen::Index i = na, j = nb;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && h(i, j) == h(i - 1, j - 1) + pair(i - 1, j - 1)) {
      path.push_back(Step::diag);
      --i, --j;
    } else if (i > 0 && h(i, j) == h(i - 1, j) + gap_first(i - 1)) {
      path.push_back(Step::up);
      --i;
    } else {
      path.push_back(Step::left);
      --j;
    }
  }
  std::reverse(path.begin(), path.end());
  return {std::move(path), h(na, nb)};
}

/// Stacks `a` over `b` following the path; gap columns are inserted into
/// whichever side the step does not consume.
RowMatrix merge(const RowMatrix& a, const RowMatrix& b, const std::vector<Step>& path) {
  RowMatrix out = RowMatrix::Constant(a.rows() + b.rows(), static_cast<Eigen::Index>(path.size()), kGap);
  Eigen::Index i = 0, j = 0;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    const Step s = path[static_cast<std::size_t>(c)];
    if (s != Step::left) out.col(c).head(a.rows()) = a.col(i++);
    if (s != Step::up) out.col(c).tail(b.rows()) = b.col(j++);
  }
  return out;
}

RowMatrix single_row(std::string_view bytes) {
  RowMatrix m(1, static_cast<Eigen::Index>(bytes.size()));
  for (std::size_t i = 0; i < bytes.size(); ++i)
    m(0, static_cast<Eigen::Index>(i)) = static_cast<unsigned char>(bytes[i]);
  return m;
}

/// Column summary: residue counts (sparse and dense) plus the gap count.
struct Profile {
  RowMatrix rows;
  std::vector<std::size_t> ids;
  std::vector<std::vector<std::pair<std::int16_t, int>>> sparse;
  std::vector<std::array<int, 256>> dense;
  std::vector<int> residues;

  void summarize(bool with_dense) {
    const auto cols = static_cast<std::size_t>(rows.cols());
    sparse.assign(cols, {});
    residues.assign(cols, 0);
    if (with_dense) dense.assign(cols, std::array<int, 256>{});
    std::array<int, 256> count{};
    for (std::size_t c = 0; c < cols; ++c) {
      count.fill(0);
      for (Eigen::Index r = 0; r < rows.rows(); ++r) {
        const auto v = rows(r, static_cast<Eigen::Index>(c));
        if (v != kGap) ++count[static_cast<std::size_t>(v)];
      }
      for (int v = 0; v < 256; ++v)
        if (count[static_cast<std::size_t>(v)]) {
          sparse[c].emplace_back(static_cast<std::int16_t>(v), count[static_cast<std::size_t>(v)]);
          residues[c] += count[static_cast<std::size_t>(v)];
        }
      if (with_dense) dense[c] = count;
    }
  }
};

Profile align_profiles(Profile a, Profile b, const Scoring& sc) {
  a.summarize(false);
  b.summarize(true);
  const double ka = static_cast<double>(a.rows.rows()), kb = static_cast<double>(b.rows.rows());
  const double norm = 1.0 / (ka * kb);

  auto pair = [&](Eigen::Index i, Eigen::Index j) {
    const auto ci = static_cast<std::size_t>(i), cj = static_cast<std::size_t>(j);
    long same = 0;
    for (const auto& [sym, cnt] : a.sparse[ci])
      same += static_cast<long>(cnt) * b.dense[cj][static_cast<std::size_t>(sym)];
    const double ra = a.residues[ci], rb = b.residues[cj];
    const double ga = ka - ra, gb = kb - rb;
    return (sc.match * static_cast<double>(same) + sc.mismatch * (ra * rb - static_cast<double>(same)) +
            sc.gap * (ra * gb + ga * rb)) *
           norm;
  };
  auto gap_a = [&](Eigen::Index i) { return sc.gap * a.residues[static_cast<std::size_t>(i)] / ka; };
  auto gap_b = [&](Eigen::Index j) { return sc.gap * b.residues[static_cast<std::size_t>(j)] / kb; };

  auto [path, score] = global_path<double>(a.rows.cols(), b.rows.cols(), pair, gap_a, gap_b);
  (void)score;
  Profile out;
  out.rows = merge(a.rows, b.rows, path);
  out.ids = std::move(a.ids);
  out.ids.insert(out.ids.end(), b.ids.begin(), b.ids.end());
  return out;
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

PairwiseAlignment needleman_wunsch(std::string_view a, std::string_view b, const Scoring& sc) {
  auto pair = [&](Eigen::Index i, Eigen::Index j) {
    return a[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(j)] ? sc.match : sc.mismatch;
  };
  auto gap = [&](Eigen::Index) { return sc.gap; };
  auto [path, score] = global_path<long>(static_cast<Eigen::Index>(a.size()),
                                         static_cast<Eigen::Index>(b.size()), pair, gap, gap);
  return {merge(single_row(a), single_row(b), path), score};
}

DistanceMatrix similarity_matrix(const Corpus& corpus, const PairHook& on_pair) {
  const auto n = static_cast<Eigen::Index>(corpus.size());
  DistanceMatrix d = DistanceMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto& a = corpus[static_cast<std::size_t>(i)];
      const auto& b = corpus[static_cast<std::size_t>(j)];
      d(i, j) = d(j, i) = static_cast<double>(levenshtein(a.bytes(), b.bytes())) /
                          static_cast<double>(std::max(a.length(), b.length()));
      if (on_pair) on_pair(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  return d;
}

std::vector<std::size_t> GuideTree::leaves(std::size_t id) const {
  std::vector<std::size_t> out, stack{id};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (is_leaf(v)) {
      out.push_back(v);
      continue;
    }
    stack.push_back(static_cast<std::size_t>(nodes[v].right));
    stack.push_back(static_cast<std::size_t>(nodes[v].left));
  }
  return out;
}

GuideTree build_guide_tree(const DistanceMatrix& distances) {
  const auto n = static_cast<std::size_t>(distances.rows());
  if (n < 2 || distances.cols() != distances.rows())
    throw std::invalid_argument("guide tree needs a square distance matrix over at least 2 items");

  GuideTree tree;
  tree.leaf_count = n;
  tree.nodes.resize(n);
  const auto total = static_cast<Eigen::Index>(2 * n - 1);
  DistanceMatrix d = DistanceMatrix::Zero(total, total);
  d.topLeftCorner(distances.rows(), distances.cols()) = distances;

  std::vector<Eigen::Index> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = static_cast<Eigen::Index>(i);
  constexpr double eps = 1e-12;

  auto join = [&](std::size_t ai, std::size_t aj, double li, double lj) {
    const Eigen::Index i = active[ai], j = active[aj];
    const auto u = static_cast<Eigen::Index>(tree.nodes.size());
    tree.nodes.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(j),
                          std::max(0.0, li), std::max(0.0, lj)});
    for (auto k : active) d(u, k) = d(k, u) = 0.5 * (d(i, k) + d(j, k) - d(i, j));
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(aj));
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(ai));
    active.push_back(u);
  };

  while (active.size() > 2) {
    const std::size_t m = active.size();
    std::vector<double> r(m, 0.0);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) r[a] += d(active[a], active[b]);

    std::size_t bi = 0, bj = 1;
    double best_q = std::numeric_limits<double>::infinity(), best_d = best_q;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        const double dij = d(active[a], active[b]);
        const double q = static_cast<double>(m - 2) * dij - r[a] - r[b];
        const double tol = eps * std::max(1.0, std::abs(q));
        if (q < best_q - tol || (std::abs(q - best_q) <= tol && dij < best_d)) {
          best_q = q;
          best_d = dij;
          bi = a;
          bj = b;
        }
      }
    const double dij = d(active[bi], active[bj]);
    const double li = 0.5 * dij + (r[bi] - r[bj]) / (2.0 * static_cast<double>(m - 2));
    join(bi, bj, li, dij - li);
  }
  const double last = d(active[0], active[1]);
  join(0, 1, 0.5 * last, 0.5 * last);
  return tree;
}

RowMatrix progressive_align(const Corpus& corpus, const GuideTree& tree, const Scoring& scoring) {
  if (tree.leaf_count != corpus.size())
    throw std::invalid_argument("guide tree leaves do not match the corpus");

  std::vector<Profile> profiles(tree.nodes.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    profiles[i].rows = single_row(corpus[i].bytes());
    profiles[i].ids = {i};
  }
  // Internal nodes are created after their children, so index order is a
  // valid leaves-to-root order.
  for (std::size_t v = tree.leaf_count; v < tree.nodes.size(); ++v) {
    const auto& node = tree.nodes[v];
    profiles[v] = align_profiles(std::move(profiles[static_cast<std::size_t>(node.left)]),
                                 std::move(profiles[static_cast<std::size_t>(node.right)]), scoring);
  }

  const Profile& top = profiles[tree.root()];
  RowMatrix out(top.rows.rows(), top.rows.cols());
  for (std::size_t r = 0; r < top.ids.size(); ++r)
    out.row(static_cast<Eigen::Index>(top.ids[r])) = top.rows.row(static_cast<Eigen::Index>(r));
  return out;
}

RowMatrix clustalw_lite(const Corpus& corpus, const Scoring& scoring) {
  if (corpus.size() < 2) throw std::invalid_argument("alignment needs at least 2 sequences");
  return progressive_align(corpus, build_guide_tree(similarity_matrix(corpus)), scoring);
}

}  // namespace msw
