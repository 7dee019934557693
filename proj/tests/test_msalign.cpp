#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "msw/msalign.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace msw;

namespace {

Corpus corpus_of(std::vector<std::string> seqs) { return Corpus(std::move(seqs), "test"); }

std::vector<std::string> listing(const MswCollection& msws) {
  std::vector<std::string> out;
  for (const auto& m : msws) out.push_back(to_string(m));
  return out;
}

std::vector<std::string> values(const AnchorChain& chain) {
  std::vector<std::string> out;
  for (const auto& a : chain.anchors) out.push_back(a.value);
  return out;
}

const Corpus& worked() {
  static const Corpus c = corpus_of({"ADCxzDCxBAx", "DCxAzDCxpxBA"});
  return c;
}

MswCollection worked_msws() { return extract_msws(Gst(worked())); }

Segment segment(std::vector<std::uint32_t> lo, std::vector<std::uint32_t> hi) {
  return Segment{std::move(lo), std::move(hi)};
}

// Crafted corpus: QWERTY near both ends, ABCDE in the middle of both.
Corpus position_corpus() {
  std::string a(100, 'x'), b(100, 'y');
  a.replace(5, 6, "QWERTY");
  a.replace(50, 5, "ABCDE");
  b.replace(50, 5, "ABCDE");
  b.replace(90, 6, "QWERTY");
  return corpus_of({a, b});
}

}  // namespace

TEST(Restrict, RightOfFirstAnchor) {
  const Anchor z{"zDCx", {4, 4}};
  const auto rest = trim_partial_overlaps(remove_full_overlaps(worked_msws(), z), z);
  const auto right = restrict_to(rest, segment({8, 8}, {11, 12}));
  EXPECT_EQ(listing(right), (std::vector<std::string>{"[A – {0@9 1@11}]", "[BA – {0@8 1@10}]",
                                                      "[x – {0@10 1@9}]"}));
  const auto left = restrict_to(rest, segment({0, 0}, {4, 4}));
  EXPECT_EQ(listing(left), (std::vector<std::string>{"[A – {0@0 1@3}]", "[Cx – {0@2 1@1}]",
                                                     "[DCx – {0@1 1@0}]", "[x – {0@3 1@2}]"}));
}

TEST(Restrict, CrossingOverIsDropped) {
  const MswCollection left{{"A", {{0}, {3}}}};
  const Anchor dcx{"DCx", {1, 0}};
  const auto rest = trim_partial_overlaps(remove_full_overlaps(left, dcx), dcx);
  EXPECT_EQ(rest.size(), 1u);
  EXPECT_TRUE(restrict_to(rest, segment({0, 0}, {1, 0})).empty());
  EXPECT_TRUE(restrict_to(rest, segment({4, 3}, {4, 4})).empty());
}

TEST(Restrict, WholeSegmentIsIdentity) {
  const auto msws = worked_msws();
  EXPECT_EQ(restrict_to(msws, Segment::whole(worked())), msws);
}

TEST(SelectAnchor, BiggestLeftMostOnWorkedExample) {
  const auto a = select_anchor(worked_msws(), Segment::whole(worked()), {}, worked());
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, (Anchor{"zDCx", {4, 4}}));
}

TEST(SelectAnchor, EmptyCollection) {
  EXPECT_FALSE(select_anchor({}, Segment::whole(worked()), {}, worked()));
}

TEST(SelectAnchor, TieGoesToFirstInCollectionOrder) {
  const Corpus c = corpus_of({"abXcd", "abYcd"});
  const auto msws = extract_msws(Gst(c));
  // Oracle: first MSW of maximal length, scanning the collection.
  std::size_t best = 0;
  for (std::size_t i = 1; i < msws.size(); ++i)
    if (msws[i].length() > msws[best].length()) best = i;
  ASSERT_EQ(msws[best].value, "ab");
  const auto a = select_anchor(msws, Segment::whole(c), {}, c);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, (Anchor{"ab", {0, 0}}));
}

TEST(SelectAnchor, MinAnchorLenFiltersShortValues) {
  StrategyConfig cfg;
  cfg.min_anchor_len = 5;
  EXPECT_FALSE(select_anchor(worked_msws(), Segment::whole(worked()), cfg, worked()));
  cfg.kind = Strategy::min_variance;
  EXPECT_FALSE(select_anchor(worked_msws(), Segment::whole(worked()), cfg, worked()));
}

TEST(SelectAnchor, MinVariancePrefersConsistentPosition) {
  const Corpus c = position_corpus();
  const auto msws = extract_msws(Gst(c));
  StrategyConfig cfg;
  const auto longest = select_anchor(msws, Segment::whole(c), cfg, c);
  ASSERT_TRUE(longest);
  EXPECT_EQ(longest->value, "QWERTY");

  cfg.kind = Strategy::min_variance;
  for (std::size_t n : {2u, 9u}) {
    cfg.n_largest = n;
    const auto consistent = select_anchor(msws, Segment::whole(c), cfg, c);
    ASSERT_TRUE(consistent);
    EXPECT_EQ(*consistent, (Anchor{"ABCDE", {50, 50}}));
  }
  cfg.n_largest = 1;
  EXPECT_EQ(select_anchor(msws, Segment::whole(c), cfg, c)->value, "QWERTY");
}

TEST(SelectAnchor, MinVarianceScoresBestCombination) {
  // "ab" twice in the first sequence; the occurrence at the matching
  // relative position wins.
  const Corpus c = corpus_of({"abxxxxab", "yyyyyyab"});
  StrategyConfig cfg;
  cfg.kind = Strategy::min_variance;
  const auto a = select_anchor(extract_msws(Gst(c)), Segment::whole(c), cfg, c);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, (Anchor{"ab", {6, 6}}));
}

TEST(SelectAnchor, MinVarianceTieBreaksLexicographically) {
  const Corpus c = corpus_of({"cdXab", "cdYab"});
  StrategyConfig cfg;
  cfg.kind = Strategy::min_variance;
  const auto a = select_anchor(extract_msws(Gst(c)), Segment::whole(c), cfg, c);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->value, "ab");
}

TEST(SelectAnchor, MinVarianceCapFallsBack) {
  const Corpus c = corpus_of({"aXa", "aYa"});
  StrategyConfig cfg;
  cfg.kind = Strategy::min_variance;
  cfg.combination_cap = 3;  // 'a' has 2 x 2 combinations
  AlignStats stats;
  const auto a = select_anchor(extract_msws(Gst(c)), Segment::whole(c), cfg, c, &stats);
  ASSERT_TRUE(a);
  EXPECT_EQ(*a, (Anchor{"a", {0, 0}}));
  EXPECT_EQ(stats.skipped_candidates, 1u);
  EXPECT_EQ(stats.fallbacks, 1u);
}

TEST(RemoveFullOverlaps, WorkedExample) {
  const auto out = remove_full_overlaps(worked_msws(), Anchor{"zDCx", {4, 4}});
  EXPECT_EQ(listing(out), (std::vector<std::string>{
                              "[A – {0@0 0@9 1@3 1@11}]",
                              "[BA – {0@8 1@10}]",
                              "[Cx – {0@2 1@1}]",
                              "[DCx – {0@1 1@0}]",
                              "[x – {0@3 0@10 1@2 1@9}]",
                              "[xBA – {0@7 1@9}]",
                          }));
}

TEST(RemoveFullOverlaps, DisjointAnchorKeepsAll) {
  const auto msws = worked_msws();
  const MswCollection some(msws.begin(), msws.begin() + 2);  // A, BA
  EXPECT_EQ(remove_full_overlaps(some, Anchor{"DCx", {1, 0}}), some);
}

TEST(RemoveFullOverlaps, MswInsideAnchorDisappears) {
  const Corpus c = corpus_of({"aXYZa", "bXYZb"});
  const auto msws = extract_msws(Gst(c));
  std::vector<std::string> vs;
  for (const auto& m : msws) vs.push_back(m.value);
  EXPECT_EQ(vs, (std::vector<std::string>{"XYZ", "YZ", "Z"}));
  EXPECT_TRUE(remove_full_overlaps(msws, Anchor{"XYZ", {1, 1}}).empty());
}

TEST(TrimPartialOverlaps, MergesIntoExistingMsw) {
  const Anchor z{"zDCx", {4, 4}};
  const auto reduced = remove_full_overlaps(worked_msws(), z);
  const auto out = trim_partial_overlaps(reduced, z);
  // xBA loses 0@7 to BA@8, which already exists.
  EXPECT_EQ(listing(out), (std::vector<std::string>{
                              "[A – {0@0 0@9 1@3 1@11}]",
                              "[BA – {0@8 1@10}]",
                              "[Cx – {0@2 1@1}]",
                              "[DCx – {0@1 1@0}]",
                              "[x – {0@3 0@10 1@2 1@9}]",
                              "[xBA – {1@9}]",
                          }));
}

TEST(TrimPartialOverlaps, NoPartialOverlapIsIdentity) {
  const auto msws = remove_full_overlaps(worked_msws(), Anchor{"DCx", {1, 0}});
  EXPECT_EQ(trim_partial_overlaps(msws, Anchor{"DCx", {1, 0}}), msws);
}

TEST(TrimPartialOverlaps, CreatesNewMsw) {
  const Corpus c = corpus_of({"xabcQ", "yabcR"});
  const Anchor anchor{"c", {3, 3}};
  const auto out = trim_partial_overlaps(remove_full_overlaps(extract_msws(Gst(c)), anchor), anchor);
  EXPECT_EQ(listing(out), (std::vector<std::string>{"[ab – {0@1 1@1}]", "[b – {0@2 1@2}]"}));
}

TEST(TrimPartialOverlaps, ProtrudingBothSidesKeepsLongerSide) {
  const MswCollection msws{{"abc", {{0}, {0}}}, {"abcd", {{2}, {0}}}};
  const Anchor anchor{"b", {1, 1}};
  // abc: one symbol either side, left wins; abcd@2 in seq 0 starts after the
  // anchor; abcd@0 in seq 1 keeps "cd".
  const auto out = trim_partial_overlaps(msws, anchor);
  EXPECT_EQ(listing(out), (std::vector<std::string>{"[abcd – {0@2}]", "[a – {0@0 1@0}]", "[cd – {1@2}]"}));
}

TEST(Align, WorkedExample) {
  const AnchorChain chain = align(worked());
  EXPECT_EQ(chain.anchors, (std::vector<Anchor>{{"DCx", {1, 0}}, {"zDCx", {4, 4}}, {"BA", {8, 10}}}));
}

TEST(Align, IdenticalSequences) {
  EXPECT_EQ(align(corpus_of({"abc", "abc"})).anchors, (std::vector<Anchor>{{"abc", {0, 0}}}));
}

TEST(Align, NoCommonSubwords) { EXPECT_TRUE(align(corpus_of({"abc", "xyz"})).empty()); }

TEST(Align, RejectsSingleSequence) {
  EXPECT_THROW(align(corpus_of({"abc"})), std::invalid_argument);
}

TEST(Align, RejectsInvalidConfig) {
  StrategyConfig cfg;
  cfg.n_largest = 0;
  EXPECT_THROW(align(worked(), cfg), std::invalid_argument);
}

TEST(Render, WorkedExample) {
  const RowMatrix m = render(worked(), align(worked()));
  EXPECT_EQ(to_text(m), (std::vector<std::string>{"ADCx*zDCx**BAx", "*DCxAzDCxpxBA*"}));
  EXPECT_EQ(to_text(m, ' '), (std::vector<std::string>{"ADCx zDCx  BAx", " DCxAzDCxpxBA "}));
}

TEST(Render, IdenticalSequencesHaveNoGaps) {
  const Corpus c = corpus_of({"hello", "hello", "hello"});
  EXPECT_EQ(to_text(render(c, align(c))), (std::vector<std::string>(3, "hello")));
}

TEST(Render, EmptyChainLeftJustifies) {
  EXPECT_EQ(to_text(render(corpus_of({"ab", "wxyz"}), {})), (std::vector<std::string>{"ab**", "wxyz"}));
}

TEST(Render, RejectsInvalidChain) {
  const AnchorChain crossing{{{"BA", {8, 10}}, {"DCx", {1, 0}}}};
  EXPECT_THROW(render(worked(), crossing), std::invalid_argument);
  const AnchorChain wrong{{{"DCx", {0, 0}}}};
  EXPECT_THROW(validate_chain(worked(), wrong), std::invalid_argument);
}

TEST(RegexSkeleton, SearchMessages) {
  const Corpus c = parse_lines(testutil::kSearchMessages, LineMode::raw);
  const AnchorChain chain = align(c);
  EXPECT_EQ(values(chain), (std::vector<std::string>{"{id:", ",op:S,sn:", "i", "}"}));
  StrategyConfig cfg;
  cfg.min_anchor_len = 2;
  const std::string pattern = regex_skeleton(c, chain, cfg);
  EXPECT_EQ(pattern, "\\{id:.*,op:S,sn:.*\\}");
  const std::regex re(pattern);
  for (const auto& s : c) EXPECT_TRUE(std::regex_match(s.bytes(), re));
}

TEST(RegexSkeleton, IdenticalSequencesAreConstant) {
  const Corpus c = corpus_of({"a.b(c)", "a.b(c)"});
  EXPECT_EQ(regex_skeleton(c, align(c)), "a\\.b\\(c\\)");
}

TEST(RegexSkeleton, EmptyChainIsWildcard) {
  EXPECT_EQ(regex_skeleton(corpus_of({"abc", "xyz"}), {}), ".*");
}

TEST(RegexSkeleton, LineBreaksUseDotAllWildcard) {
  const Corpus c = corpus_of({"k=1\n2;", "k=3;"});
  EXPECT_EQ(regex_skeleton(c, align(c)), "k=[\\s\\S]*;");
}

TEST(RegexEscape, SpecialAndNonPrintable) {
  EXPECT_EQ(regex_escape("a+b"), "a\\+b");
  EXPECT_EQ(regex_escape(std::string("\x01 \xff", 3)), "\\x01 \\xff");
}

namespace {

void check_alignment(const Corpus& c, const AnchorChain& chain) {
  // Chain soundness.
  for (std::size_t s = 0; s < c.size(); ++s) {
    std::uint32_t cursor = 0;
    for (const auto& a : chain.anchors) {
      ASSERT_GE(a.starts[s], cursor);
      ASSERT_EQ(c[s].bytes().substr(a.starts[s], a.length()), a.value);
      cursor = a.end(s);
    }
  }
  // Render reconstruction and gap-symbol freedom.
  const RowMatrix m = render(c, chain);
  const auto star = to_text(m, '*'), hash = to_text(m, '#');
  for (std::size_t s = 0; s < c.size(); ++s) {
    EXPECT_EQ(strip_gaps(m, static_cast<Eigen::Index>(s)), c[s].bytes());
    EXPECT_EQ(star[s].size(), star[0].size());
    std::string swapped = hash[s];
    for (std::size_t k = 0; k < swapped.size(); ++k)
      if (m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(k)) == kGap) swapped[k] = '*';
    EXPECT_EQ(swapped, star[s]);
  }
  // Skeleton matches every sequence.
  const std::regex re(regex_skeleton(c, chain));
  for (const auto& s : c) EXPECT_TRUE(std::regex_match(s.bytes(), re));
}

}  // namespace

TEST(AlignProperty, RandomCorporaAreSound) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const Corpus c = corpus_of(oracle::random_corpus(rng, 2 + rng() % 10, 5, 60, trial % 2 ? "ab.c" : "abcdef"));
    StrategyConfig cfg;
    if (trial % 3 == 0) cfg.kind = Strategy::min_variance;
    check_alignment(c, align(c, cfg));
    if (HasFatalFailure()) return;
  }
}

TEST(AlignProperty, RespectsMinAnchorLen) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const Corpus c = corpus_of(oracle::random_corpus(rng, 3, 10, 40, "abc"));
    StrategyConfig cfg;
    cfg.min_anchor_len = 3;
    for (const auto& a : align(c, cfg).anchors) EXPECT_GE(a.length(), 3u);
  }
}

TEST(AlignProperty, BiggestLeftMostIgnoresSequenceLengths) {
  const auto msws = worked_msws();
  const Corpus padded = corpus_of({"ADCxzDCxBAx" + std::string(50, '0'), "DCxAzDCxpxBA" + std::string(50, '1')});
  EXPECT_EQ(select_anchor(msws, Segment::whole(worked()), {}, worked()),
            select_anchor(msws, Segment::whole(worked()), {}, padded));
}
