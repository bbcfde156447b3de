#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "augtree/library.hpp"
#include "augtree/separation.hpp"
#include "builders.hpp"

namespace augtree {
namespace {

using testing::build_builtin;

int counted_degree(const AugmentedGraph& g, int v) {
  return static_cast<int>(g.parents(v).size() + g.children(v).size() + g.horizontal(v).size() + g.slanted(v).size());
}

TEST(DegreeProfile, TreeDegrees) {
  const auto g = build_builtin("cantor", 5).raw.graph;
  const auto p = degree_profile(g);
  EXPECT_EQ(p.max_degree, 3);
  EXPECT_EQ(p.levels[0].max_degree, 2);
  EXPECT_EQ(p.levels[5].max_degree, 1);
  EXPECT_EQ(p.vertical_edges, g.size() - 1);
  EXPECT_EQ(p.horizontal_edges, 0u);
}

TEST(DegreeProfile, MatchesHandCountAndIsStable) {
  // From depth 3 on, some vertex has a parent, two children and two horizontal neighbours.
  for (int depth = 3; depth <= 10; ++depth) {
    const auto g = build_builtin("unit_interval", depth).raw.graph;
    const auto p = degree_profile(g);
    int worst = 0;
    std::size_t total = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
      worst = std::max(worst, counted_degree(g, static_cast<int>(v)));
      total += static_cast<std::size_t>(counted_degree(g, static_cast<int>(v)));
    }
    EXPECT_EQ(p.max_degree, worst);
    EXPECT_EQ(p.max_degree, 5);
    EXPECT_EQ(2 * (p.vertical_edges + p.horizontal_edges + p.slanted_edges), total);
    std::size_t hist = 0;
    for (const auto& [deg, count] : p.histogram) hist += count;
    EXPECT_EQ(hist, g.size());
  }
}

TEST(DegreeProfile, GoldenBlockLevelsGrow) {
  const auto g = build_builtin("golden", 10).raw.graph;
  const auto p = degree_profile(g);
  for (int k = 1; 3 * k < 10; ++k) EXPECT_GE(p.levels[static_cast<std::size_t>(3 * k)].max_degree, (1 << k) - 1);
}

TEST(Coincidence, GoldenDepthThree) {
  const auto rep = coincidence_search(builtin_ifs("golden"), 3);
  ASSERT_EQ(rep.pairs.size(), 1u);
  EXPECT_EQ(rep.pairs[0].first, Word::parse("011"));
  EXPECT_EQ(rep.pairs[0].second, Word::parse("100"));
  EXPECT_FALSE(rep.heuristic);
  EXPECT_EQ(rep.words_checked, 1u + 2 + 4 + 8);
}

TEST(Coincidence, BlockWordsCoincidePairwise) {
  const auto rep = coincidence_search(builtin_ifs("golden"), 6);
  std::set<std::pair<std::string, std::string>> found;
  for (const auto& [a, b] : rep.pairs) found.insert({a.to_string(), b.to_string()});
  const std::vector<std::string> block{"011011", "011100", "100011", "100100"};
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = i + 1; j < block.size(); ++j) EXPECT_TRUE(found.count({block[i], block[j]})) << block[i] << block[j];
}

TEST(Coincidence, CantorHasNone) {
  EXPECT_TRUE(coincidence_search(builtin_ifs("cantor"), 8).pairs.empty());
}

TEST(BallCount, CantorMeetsAtMostTwoCells) {
  const auto tree = build_builtin("cantor", 7);
  const auto fps = vertex_fingerprints(tree.raw.graph, tree.spec);
  const auto rep = ball_intersection_count(tree.raw.graph, tree.raw.cells, fps, 1.0);
  EXPECT_LE(rep.max_raw, 2u);
  EXPECT_EQ(rep.levels.size(), 7u);
  for (const auto& l : rep.levels) EXPECT_EQ(l.balls, std::size_t{1} << l.level);
}

TEST(BallCount, FarBallMeetsNothing) {
  const auto tree = build_builtin("cantor", 4);
  const auto fps = vertex_fingerprints(tree.raw.graph, tree.spec);
  Vec c(1);
  c << 2.5;
  for (int n = 1; n <= 4; ++n) {
    const auto hit = ball_cell_count(tree.raw.graph, tree.raw.cells, fps, n, c, std::pow(1.0 / 3, n));
    EXPECT_EQ(hit.raw, 0u);
  }
}

TEST(BallCount, GoldenRawGrowsDistinctStaysBounded) {
  const auto tree = build_builtin("golden", 12);
  const auto fps = vertex_fingerprints(tree.raw.graph, tree.spec);
  const auto rep = ball_intersection_count(tree.raw.graph, tree.raw.cells, fps, 1.0, 64, 5, 2);
  const auto& lv = rep.levels;
  EXPECT_GT(lv.back().max_raw, lv[5].max_raw);
  std::size_t distinct_late = 0;
  for (std::size_t i = 5; i < lv.size(); ++i) distinct_late = std::max(distinct_late, lv[i].max_distinct);
  EXPECT_LE(distinct_late, lv[5].max_distinct + 2);
  EXPECT_LT(rep.max_distinct, rep.max_raw);
}

TEST(Verdict, CantorIsBoundedBothWays) {
  const auto v = osc_wsc_verdict(builtin_ifs("cantor"), 8);
  EXPECT_EQ(v.osc.evidence, Evidence::bounded);
  EXPECT_EQ(v.wsc.evidence, Evidence::bounded);
}

TEST(Verdict, GoldenIsWscNotOsc) {
  const auto v = osc_wsc_verdict(builtin_ifs("golden"), 10);
  EXPECT_EQ(v.osc.evidence, Evidence::unbounded);
  EXPECT_EQ(v.wsc.evidence, Evidence::bounded);
  EXPECT_FALSE(v.coincidences.pairs.empty());
}

TEST(Verdict, IrrationalOverlapIsFlagged) {
  const auto tree = build_builtin("overlap", 6, std::nullopt, true);
  EXPECT_TRUE(tree.quotient->graph.heuristic);
  const auto v = osc_wsc_verdict(tree);
  EXPECT_NE(v.wsc.evidence, Evidence::bounded);
  EXPECT_TRUE(v.coincidences.heuristic || v.coincidences.pairs.empty());
}

TEST(Verdict, ThresholdsAndShortProfiles) {
  DegreeProfile p;
  for (int n = 0; n <= 2; ++n) p.levels.push_back(LevelDegrees{n, 1, 3});
  EXPECT_EQ(degree_growth(p).evidence, Evidence::inconclusive);
  EXPECT_EQ(to_string(Evidence::bounded), "bounded-degree-evidence");
}

}  // namespace
}  // namespace augtree
