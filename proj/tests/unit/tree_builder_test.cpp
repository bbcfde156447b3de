#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "augtree/error.hpp"
#include "augtree/ifs_file.hpp"
#include "augtree/library.hpp"
#include "augtree/tree_builder.hpp"
#include "builders.hpp"

namespace augtree {
namespace {

using testing::build_builtin;

const char* kTwoRatios =
    "dimension = 1\n"
    "[map]\nratio = 1/2\ntranslation = 0\n"
    "[map]\nratio = 1/4\ntranslation = 3/4\n";

std::set<std::string> words_of(const std::vector<Word>& ws) {
  std::set<std::string> out;
  for (const auto& w : ws) out.insert(w.to_string());
  return out;
}

// J_n by definition over all words up to length `max_len`, in exact arithmetic.
std::set<std::string> cut_set_oracle(const ContractionSpec& spec, int n, int max_len) {
  const QuadNumber r = *spec.exact_min_ratio();
  const QuadNumber rn = pow(r, static_cast<unsigned>(n));
  std::set<std::string> out;
  std::vector<Word> frontier{Word{}};
  for (int len = 0; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      const QuadNumber rw = exact_ratio(w, spec);
      const bool parent_above = w.empty() || exact_ratio(w.prefix(w.size() - 1), spec) > rn;
      if (rw <= rn && parent_above) out.insert(w.to_string());
      if (rw > rn)
        for (Letter l = 0; l < spec.size(); ++l) next.push_back(w.extended(l));
    }
    frontier = std::move(next);
  }
  return out;
}

TEST(Levels, EquicontractiveLevelsAreFullShifts) {
  const auto lv = build_levels(builtin_ifs("unit_interval"), 3);
  ASSERT_EQ(lv.levels.size(), 4u);
  EXPECT_EQ(lv.levels[0].size(), 1u);
  EXPECT_TRUE(lv.levels[0][0].empty());
  EXPECT_EQ(lv.levels[3].size(), 8u);
  EXPECT_TRUE(lv.exact);
}

TEST(Levels, UnequalRatios) {
  const auto spec = parse_ifs(kTwoRatios);
  const auto lv = build_levels(spec, 3);
  EXPECT_EQ(words_of(lv.levels[1]), (std::set<std::string>{"00", "01", "1"}));
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(words_of(lv.levels[static_cast<std::size_t>(n)]), cut_set_oracle(spec, n, 8));
  const auto g = build_vertical_edges(lv);
  const int v00 = *g.find_word(Word{0, 0});
  EXPECT_EQ(g.parent(v00), g.root());
}

TEST(Levels, BudgetIsEnforced) {
  EXPECT_THROW(build_levels(builtin_ifs("sierpinski"), 8, 1000), BudgetExceeded);
  BuildOptions opt;
  opt.depth = 12;
  opt.budget = 500;
  EXPECT_THROW(build_ifs_tree(builtin_ifs("cantor"), opt), BudgetExceeded);
}

TEST(Vertical, AncestorChainHasLengthOfLevel) {
  const auto g = build_builtin("touching_cantor", 4).raw.graph;
  for (std::size_t v = 0; v < g.size(); ++v) {
    int u = static_cast<int>(v), steps = 0;
    while (u != g.root()) {
      const int p = g.parent(u);
      EXPECT_TRUE(g.vertex(p).words.front().is_prefix_of(g.vertex(u).words.front()));
      u = p;
      ++steps;
    }
    EXPECT_EQ(steps, g.level_of(static_cast<int>(v)));
  }
  EXPECT_EQ(g.parent(*g.find_word(Word{0, 1})), *g.find_word(Word{0}));
}

TEST(Horizontal, UnitIntervalLevelTwoIsAPath) {
  const auto g = build_builtin("unit_interval", 2, 0.1).raw.graph;
  const auto& lv = g.level(2);
  ASSERT_EQ(lv.size(), 4u);
  std::map<std::string, int> id;
  for (int v : lv) id[g.vertex(v).label()] = v;
  EXPECT_TRUE(g.has_horizontal(id["00"], id["01"]));
  EXPECT_TRUE(g.has_horizontal(id["01"], id["10"]));
  EXPECT_TRUE(g.has_horizontal(id["10"], id["11"]));
  EXPECT_FALSE(g.has_horizontal(id["00"], id["10"]));
  EXPECT_FALSE(g.has_horizontal(id["00"], id["11"]));
  EXPECT_EQ(g.horizontal_edge_count(), 1u + 3u);
  EXPECT_EQ(g.uncertain_edge_count(), 0u);
}

TEST(Horizontal, CantorHasNoHorizontalEdges) {
  EXPECT_EQ(build_builtin("cantor", 6, 0.5).raw.graph.horizontal_edge_count(), 0u);
}

// Exact 1-D oracle: touching Cantor cells S_w([0,1]) are joined iff their gap is <= kappa r^n.
TEST(Horizontal, PropertyMatchesExactGaps) {
  const auto spec = builtin_ifs("touching_cantor");
  for (double kappa : {0.1, 0.6, 1.3}) {
    const auto tree = build_builtin("touching_cantor", 4, kappa);
    const auto& g = tree.raw.graph;
    for (int n = 1; n <= g.depth(); ++n) {
      const double reach = kappa * std::pow(0.25, n);
      for (int x : g.level(n))
        for (int y : g.level(n)) {
          if (x >= y) continue;
          Vec zero(1), one(1);
          zero << 0.0;
          one << 1.0;
          const auto mx = compose(g.vertex(x).words.front(), spec), my = compose(g.vertex(y).words.front(), spec);
          const double ax = mx.apply(zero)(0), bx = mx.apply(one)(0), ay = my.apply(zero)(0), by = my.apply(one)(0);
          const double gap = std::max({0.0, ay - bx, ax - by});
          if (std::abs(gap - reach) < 1e-6 * reach) continue;  // boundary cases may be uncertain
          EXPECT_EQ(g.has_horizontal(x, y), gap <= reach) << g.vertex(x).label() << " " << g.vertex(y).label();
        }
    }
  }
}

TEST(Horizontal, IntersectingCellsAreAlwaysJoined) {
  for (double kappa : {1e-6, 0.01, 0.3}) {
    const auto g = build_builtin("sierpinski", 3, kappa).raw.graph;
    // Siblings in the gasket touch pairwise.
    for (std::size_t v = 0; v < g.size(); ++v) {
      const auto& kids = g.children(static_cast<int>(v));
      for (int a : kids)
        for (int b : kids)
          if (a != b) EXPECT_TRUE(g.has_horizontal(a, b));
    }
  }
}

TEST(PreAugmented, BuiltGraphsPass) {
  EXPECT_TRUE(build_builtin("unit_interval", 6).report.pre_augmented.ok());
  EXPECT_TRUE(verify_pre_augmented(build_builtin("cantor", 5).raw.graph).ok());
}

TEST(PreAugmented, CousinEdgeWithoutParentEdgeIsReported) {
  AugmentedGraph g;
  auto add = [&](int level) {
    Vertex v;
    v.level = level;
    return g.add_vertex(v);
  };
  const int o = add(0), a = add(1), b = add(1), c = add(2), d = add(2);
  g.add_vertical(o, a);
  g.add_vertical(o, b);
  g.add_vertical(a, c);
  g.add_vertical(b, d);
  g.add_horizontal(c, d);
  const auto rep = verify_pre_augmented(g);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_FALSE(rep.ok());
  g.add_horizontal(a, b, EdgeStatus::uncertain);
  const auto rep2 = verify_pre_augmented(g);
  EXPECT_TRUE(rep2.violations.empty());
  EXPECT_EQ(rep2.certified_violations.size(), 1u);
}

TEST(Quotient, GoldenMergesTheCoincidentWords) {
  const auto tree = build_builtin("golden", 3, std::nullopt, true);
  ASSERT_TRUE(tree.quotient.has_value());
  const auto& raw = tree.raw.graph;
  const int a = *raw.find_word(Word::parse("011")), b = *raw.find_word(Word::parse("100"));
  EXPECT_EQ(tree.quotient_class[static_cast<std::size_t>(a)], tree.quotient_class[static_cast<std::size_t>(b)]);
  const auto& q = tree.quotient->graph;
  EXPECT_EQ(q.level(3).size(), 7u);
  const int x = tree.quotient_class[static_cast<std::size_t>(a)];
  EXPECT_EQ(q.vertex(x).words.size(), 2u);
  EXPECT_EQ(q.parents(x).size(), 2u);
  EXPECT_THROW(q.parent(x), Unsupported);
}

TEST(Quotient, OscSystemsAreUnchanged) {
  const auto tree = build_builtin("sierpinski", 4, std::nullopt, true);
  EXPECT_EQ(tree.quotient->graph.size(), tree.raw.graph.size());
  EXPECT_EQ(tree.quotient->graph.horizontal_edge_count(), tree.raw.graph.horizontal_edge_count());
}

// Brute-force dedup of exact composed maps per level.
TEST(Quotient, GoldenClassCountsMatchDistinctMaps) {
  const auto spec = builtin_ifs("golden");
  const auto tree = build_builtin("golden", 10, std::nullopt, true);
  for (int n = 0; n <= 10; ++n) {
    std::set<std::string> maps;
    for (int v : tree.raw.graph.level(n)) {
      const auto e = compose_exact(tree.raw.graph.vertex(v).words.front(), spec);
      maps.insert(e.linear[0].to_string() + "|" + e.translation[0].to_string());
    }
    EXPECT_EQ(tree.quotient->graph.level(n).size(), maps.size()) << "level " << n;
  }
}

TEST(Moran, ConstantRatiosReproduceTheIfsTree) {
  MoranSpec ms;
  ms.ratios = {parse_scalar("1/3")};
  ms.translations = {{{parse_scalar("0")}, {parse_scalar("2/3")}}};
  const auto mt = build_moran_tree(ms, 5, 0.1);
  const auto ifs = build_builtin("cantor", 5, 0.1).raw.graph;
  EXPECT_EQ(mt.tree.graph.size(), ifs.size());
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(mt.original_level[static_cast<std::size_t>(k)], k);
  EXPECT_EQ(mt.tree.graph.horizontal_edge_count(), 0u);
  EXPECT_NEAR(mt.base_ratio, 1.0 / 3, 1e-15);
}

TEST(Moran, AlternatingRatiosRelevel) {
  MoranSpec ms;
  ms.ratios = {parse_scalar("1/2"), parse_scalar("1/4")};
  ms.translations = {{{parse_scalar("0")}, {parse_scalar("1/2")}}, {{parse_scalar("0")}, {parse_scalar("3/4")}}};
  const auto mt = build_moran_tree(ms, 3, 0.1);
  EXPECT_NEAR(mt.base_ratio, 0.25, 1e-15);
  // r_1 = 1/2 > 1/4 but r_1 r_2 = 1/8 <= 1/4.
  EXPECT_EQ(mt.original_level[1], 2);
  EXPECT_EQ(mt.tree.graph.level(1).size(), 4u);
  EXPECT_GE(mt.report.delta0, 1.0);
  EXPECT_TRUE(std::isfinite(mt.report.delta0));
}

TEST(Moran, RejectsRatiosBelowTheFloor) {
  MoranSpec ms;
  ms.ratios = {Scalar(1e-4)};
  ms.translations = {{{Scalar(0.0)}}};
  EXPECT_THROW(build_moran_tree(ms, 2), InvalidArgument);
}

TEST(Dyadic, SinglePointIsARay) {
  const auto g = build_dyadic_tree(
                     [](const std::vector<std::int64_t>& c, int) { return c[0] == 0; }, 1, 5)
                     .graph;
  for (int k = 0; k <= 5; ++k) EXPECT_EQ(g.level(k).size(), 1u);
}

TEST(Dyadic, UnitIntervalCubesFormPaths) {
  const auto g = build_dyadic_tree([](const std::vector<std::int64_t>&, int) { return true; }, 1, 3, 0.01).graph;
  EXPECT_EQ(g.level(3).size(), 8u);
  // Closed cubes [j/8, (j+1)/8]: consecutive ones touch, others are apart.
  EXPECT_EQ(g.horizontal_edge_count(), 1u + 3u + 7u);
}

TEST(Dyadic, CantorSampleMatchesBruteForce) {
  std::vector<Vec> sample;
  for (int code = 0; code < 256; ++code) {
    double x = 0.0, s = 1.0;
    for (int i = 0; i < 8; ++i) {
      s /= 3.0;
      x += 2.0 * ((code >> i) & 1) * s;
    }
    Vec p(1);
    p << x;
    sample.push_back(p);
  }
  const auto g = build_dyadic_tree(sample, 5).graph;
  for (int k = 0; k <= 5; ++k) {
    std::set<std::int64_t> cubes;
    const double side = std::ldexp(1.0, -k);
    for (const auto& p : sample) {
      // Closed cubes: a point on a grid line lies in both neighbours.
      const double t = p(0) / side;
      const auto j = static_cast<std::int64_t>(std::floor(t));
      cubes.insert(std::min<std::int64_t>(j, (std::int64_t{1} << k) - 1));
      if (t == std::floor(t) && j > 0) cubes.insert(j - 1);
    }
    EXPECT_EQ(g.level(k).size(), cubes.size()) << "level " << k;
  }
}

TEST(Slanted, UnitIntervalKappaThreshold) {
  const auto with = build_builtin("unit_interval", 3, 0.6, false, true).raw.graph;
  const int o = *with.find_word(Word{0}), far = *with.find_word(Word{1, 1});
  const auto& s = with.slanted(o);
  EXPECT_NE(std::find(s.begin(), s.end(), far), s.end());
  EXPECT_EQ(with.horizontal_edge_count(), 0u);
  const auto without = build_builtin("unit_interval", 3, 0.1, false, true).raw.graph;
  const auto& s2 = without.slanted(*without.find_word(Word{0}));
  EXPECT_EQ(std::find(s2.begin(), s2.end(), *without.find_word(Word{1, 1})), s2.end());
}

TEST(Slanted, DiamondConditions) {
  for (int depth = 1; depth <= 6; ++depth) {
    const auto g = build_builtin("unit_interval", depth, 0.6, false, true).raw.graph;
    EXPECT_TRUE(verify_diamond(g).ok()) << depth;
  }
  // es empty: condition (ii) is vacuous.
  const auto tree = build_builtin("cantor", 4).raw.graph;
  const auto rep = verify_diamond(tree);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.two_paths_checked, 0u);
  EXPECT_FALSE(verify_diamond(build_builtin("unit_interval", 3).raw.graph).ok());
}

TEST(ExtraEdges, WrapMakesEachLevelACycle) {
  BuildOptions opt;
  opt.depth = 5;
  opt.extra_edges = parse_extra_edges("wrap");
  const auto g = build_ifs_tree(builtin_ifs("unit_interval"), opt).raw.graph;
  for (int n = 2; n <= 5; ++n) {
    const auto& lv = g.level(n);
    for (int v : lv) EXPECT_EQ(g.horizontal_degree(v), 2) << g.vertex(v).label();
    std::size_t edges = 0;
    for (int v : lv) edges += g.horizontal(v).size();
    EXPECT_EQ(edges / 2, lv.size());
  }
  EXPECT_THROW(parse_extra_edges("0-1"), InvalidArgument);
  EXPECT_EQ(parse_extra_edges("01:10").front().kind, ExtraEdgeRule::Kind::pair);
}

TEST(A2, DiameterConstantIsReported) {
  const auto tree = build_builtin("sierpinski", 4);
  EXPECT_GE(tree.report.delta0, 1.0);
  EXPECT_LT(tree.report.delta0, 1.1);
}

}  // namespace
}  // namespace augtree
