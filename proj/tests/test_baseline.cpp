#include <gtest/gtest.h>

#include <random>

#include "msw/baseline.hpp"
#include "oracles.hpp"

using namespace msw;

namespace {

Corpus corpus_of(std::vector<std::string> seqs) { return Corpus(std::move(seqs), "test"); }

// Gapped rows with '\0' for gaps, for the oracle scorer.
std::string raw_row(const RowMatrix& m, Eigen::Index r) {
  std::string out;
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c) == kGap ? '\0' : static_cast<char>(m(r, c)));
  return out;
}

std::set<std::size_t> leaf_set(const GuideTree& t, std::size_t id) {
  const auto v = t.leaves(id);
  return {v.begin(), v.end()};
}

}  // namespace

TEST(Levenshtein, Examples) {
  EXPECT_EQ(levenshtein("same", "same"), 0u);
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  EXPECT_EQ(levenshtein("kitten", "sitting"), oracle::levenshtein("kitten", "sitting"));
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
}

TEST(Levenshtein, MetricAxioms) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = oracle::random_corpus(rng, 3, 0 + 1, 15, "abc");
    const auto ab = levenshtein(t[0], t[1]), ba = levenshtein(t[1], t[0]);
    EXPECT_EQ(ab, ba);
    EXPECT_EQ(ab, oracle::levenshtein(t[0], t[1]));
    EXPECT_EQ(ab == 0, t[0] == t[1]);
    EXPECT_LE(levenshtein(t[0], t[2]), ab + levenshtein(t[1], t[2]));
  }
}

TEST(NeedlemanWunsch, IdentityAlignment) {
  const auto r = needleman_wunsch("hello", "hello", Scoring{2, -1, -3});
  EXPECT_EQ(to_text(r.rows), (std::vector<std::string>{"hello", "hello"}));
  EXPECT_EQ(r.score, 10);
}

TEST(NeedlemanWunsch, DistanceScoringMatchesLevenshtein) {
  EXPECT_EQ(-needleman_wunsch("kitten", "sitting", Scoring::distance()).score, 3);
}

TEST(NeedlemanWunsch, PrefersDiagonalOnTies) {
  // The traceback from (2,1) takes the B/B diagonal before the gap.
  const auto r = needleman_wunsch("AB", "B", Scoring::distance());
  EXPECT_EQ(r.score, -1);
  EXPECT_EQ(to_text(r.rows), (std::vector<std::string>{"AB", "*B"}));
  const auto d = needleman_wunsch("AB", "B");
  EXPECT_EQ(to_text(d.rows), (std::vector<std::string>{"AB", "*B"}));
}

TEST(NeedlemanWunsch, EmptyInputs) {
  const auto r = needleman_wunsch("", "ab");
  EXPECT_EQ(to_text(r.rows), (std::vector<std::string>{"**", "ab"}));
  EXPECT_EQ(r.score, -4);
}

TEST(NeedlemanWunsch, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = oracle::random_corpus(rng, 2, 1, 7, trial % 2 ? "ab" : "abcd");
    const Scoring sc = trial % 3 ? Scoring{} : Scoring{2, -1, -1};
    const auto r = needleman_wunsch(p[0], p[1], sc);
    EXPECT_EQ(r.score, oracle::exhaustive_alignment_score(p[0], p[1], sc.match, sc.mismatch, sc.gap));
    const std::string a = raw_row(r.rows, 0), b = raw_row(r.rows, 1);
    EXPECT_EQ(r.score, oracle::score_rows(a, b, sc.match, sc.mismatch, sc.gap));
    EXPECT_EQ(strip_gaps(r.rows, 0), p[0]);
    EXPECT_EQ(strip_gaps(r.rows, 1), p[1]);
    for (Eigen::Index c = 0; c < r.rows.cols(); ++c)
      EXPECT_FALSE(r.rows(0, c) == kGap && r.rows(1, c) == kGap);
  }
}

TEST(NeedlemanWunsch, NegatedDistanceScoreIsLevenshtein) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = oracle::random_corpus(rng, 2, 1, 40, "abcd");
    EXPECT_EQ(-needleman_wunsch(p[0], p[1], Scoring::distance()).score,
              static_cast<long>(oracle::levenshtein(p[0], p[1])));
  }
}

TEST(SimilarityMatrix, Examples) {
  EXPECT_EQ(similarity_matrix(corpus_of({"abc", "abc"}))(0, 1), 0.0);
  EXPECT_EQ(similarity_matrix(corpus_of({"abc", "xyz"}))(0, 1), 1.0);
  const auto d = similarity_matrix(corpus_of({"abc", "abd", "xbcz"}));
  EXPECT_TRUE(d.isApprox(d.transpose()));
  EXPECT_EQ(d.diagonal().cwiseAbs().sum(), 0.0);
  EXPECT_DOUBLE_EQ(d(0, 2), 2.0 / 4.0);
}

TEST(SimilarityMatrix, CountsPairwiseComputations) {
  for (std::size_t n : {2u, 3u, 7u, 12u}) {
    std::vector<std::string> seqs;
    for (std::size_t i = 0; i < n; ++i) seqs.push_back("s" + std::to_string(i));
    std::size_t calls = 0;
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    similarity_matrix(corpus_of(seqs), [&](std::size_t i, std::size_t j) {
      ++calls;
      pairs.insert({std::min(i, j), std::max(i, j)});
    });
    EXPECT_EQ(calls, n * (n - 1) / 2);
    EXPECT_EQ(pairs.size(), calls);
  }
}

TEST(GuideTree, TwoLeaves) {
  DistanceMatrix d(2, 2);
  d << 0, 0.4, 0.4, 0;
  const GuideTree t = build_guide_tree(d);
  ASSERT_EQ(t.nodes.size(), 3u);
  EXPECT_EQ(t.root(), 2u);
  EXPECT_EQ(leaf_set(t, t.root()), (std::set<std::size_t>{0, 1}));
  EXPECT_DOUBLE_EQ(t.nodes[2].left_length + t.nodes[2].right_length, 0.4);
}

TEST(GuideTree, IdenticalPairJoinsFirst) {
  // For three taxa every Q entry is -(d01+d02+d12); the tie goes to the
  // closest pair.
  for (int far : {0, 1, 2}) {
    DistanceMatrix d = DistanceMatrix::Constant(3, 3, 0.8);
    d.diagonal().setZero();
    const int a = (far + 1) % 3, b = (far + 2) % 3;
    d(a, b) = d(b, a) = 0.0;
    const GuideTree t = build_guide_tree(d);
    EXPECT_EQ(leaf_set(t, 3), (std::set<std::size_t>{std::size_t(a), std::size_t(b)}));
  }
}

TEST(GuideTree, SeparatedPairs) {
  DistanceMatrix d(4, 4);
  d << 0, 0, 1, 1,  //
      0, 0, 1, 1,   //
      1, 1, 0, 0,   //
      1, 1, 0, 0;
  const GuideTree t = build_guide_tree(d);
  const auto& root = t.nodes[t.root()];
  std::set<std::set<std::size_t>> halves{leaf_set(t, static_cast<std::size_t>(root.left)),
                                         leaf_set(t, static_cast<std::size_t>(root.right))};
  EXPECT_EQ(halves, (std::set<std::set<std::size_t>>{{0, 1}, {2, 3}}));
}

TEST(GuideTree, NeighbourJoiningTextbookExample) {
  // Additive tree: ((a:2,b:3):3,(c:4,d:5)); NJ recovers its topology.
  DistanceMatrix d(4, 4);
  d << 0, 5, 9, 10,  //
      5, 0, 10, 11,  //
      9, 10, 0, 9,   //
      10, 11, 9, 0;
  const GuideTree t = build_guide_tree(d);
  const auto& first = t.nodes[4];
  EXPECT_EQ(leaf_set(t, 4), (std::set<std::size_t>{0, 1}));
  EXPECT_NEAR(first.left_length, 2.0, 1e-9);
  EXPECT_NEAR(first.right_length, 3.0, 1e-9);
}

TEST(ProgressiveAlign, TwoSequencesMatchPairwise) {
  const Corpus c = corpus_of({"GATTACA", "GCATGCU"});
  const RowMatrix rows = progressive_align(c, build_guide_tree(similarity_matrix(c)));
  EXPECT_EQ(rows, needleman_wunsch("GATTACA", "GCATGCU").rows);
}

TEST(ProgressiveAlign, IdenticalCopies) {
  EXPECT_EQ(to_text(clustalw_lite(corpus_of({"abc", "abc", "abc"}))),
            (std::vector<std::string>(3, "abc")));
}

TEST(ProgressiveAlign, ShorterSequenceGetsLeadingGap) {
  EXPECT_EQ(to_text(clustalw_lite(corpus_of({"ab", "ab", "b"}))),
            (std::vector<std::string>{"ab", "ab", "*b"}));
}

TEST(ProgressiveAlign, ReconstructsInputs) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    const Corpus c = corpus_of(oracle::random_corpus(rng, 2 + rng() % 8, 1, 30, "abcd"));
    const RowMatrix rows = clustalw_lite(c);
    ASSERT_EQ(rows.rows(), static_cast<Eigen::Index>(c.size()));
    for (std::size_t s = 0; s < c.size(); ++s) EXPECT_EQ(strip_gaps(rows, static_cast<Eigen::Index>(s)), c[s].bytes());
    for (Eigen::Index col = 0; col < rows.cols(); ++col) EXPECT_GT((rows.col(col).array() != kGap).count(), 0);
  }
}
