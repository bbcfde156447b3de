#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numeric>

#include "augtree/error.hpp"
#include "augtree/randwalk.hpp"
#include "builders.hpp"
#include "fixtures.hpp"

namespace augtree {
namespace {

using testing::build_builtin;

// Dense oracle: absorption law of the truncated chain from the full transition matrix.
std::vector<double> dense_absorption(const TruncatedChain& chain) {
  const auto& in = chain.interior();
  const auto& ab = chain.absorbing();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(in.size()), static_cast<Eigen::Index>(in.size()));
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(in.size()), static_cast<Eigen::Index>(ab.size()));
  for (std::size_t i = 0; i < in.size(); ++i)
    for (int y : chain.neighbors(in[i])) {
      const double p = 1.0 / chain.degree(in[i]);
      if (chain.interior_index(y) >= 0) q(static_cast<Eigen::Index>(i), chain.interior_index(y)) += p;
      else r(static_cast<Eigen::Index>(i), chain.absorbing_index(y)) += p;
    }
  const Eigen::MatrixXd n = (Eigen::MatrixXd::Identity(q.rows(), q.cols()) - q).inverse();
  const Eigen::RowVectorXd nu = n.row(chain.interior_index(chain.origin())) * r;
  return {nu.data(), nu.data() + nu.size()};
}

// Root with a lone path on one side and ternary branching on the other.
AugmentedGraph lopsided_fixture(int depth) {
  AugmentedGraph g;
  auto add = [&](int level) {
    Vertex v;
    v.level = level;
    v.name = "l" + std::to_string(g.size());
    return g.add_vertex(v);
  };
  const int root = add(0);
  std::vector<int> thin{add(1)}, bushy{add(1)};
  g.add_vertical(root, thin[0]);
  g.add_vertical(root, bushy[0]);
  for (int n = 2; n <= depth; ++n) {
    const int t = add(n);
    g.add_vertical(thin.back(), t);
    thin.push_back(t);
    std::vector<int> next;
    for (int v : bushy)
      for (int k = 0; k < 3; ++k) {
        const int c = add(n);
        g.add_vertical(v, c);
        next.push_back(c);
      }
    bushy = std::move(next);
  }
  return g;
}

TEST(Walks, SinglePathPutsAllMassOnItsEnd) {
  const auto g = testing::path_fixture(5);
  const TruncatedChain chain(g, 5);
  ASSERT_EQ(chain.absorbing().size(), 1u);
  const auto h = simulate_walks(chain, 1000, 3);
  EXPECT_EQ(h.counts[0], 1000u);
  EXPECT_EQ(h.censored, 0u);
}

TEST(Walks, CantorHittingIsUniform) {
  const auto g = build_builtin("cantor", 5).raw.graph;
  const TruncatedChain chain(g, 5);
  const std::uint64_t walks = 100000;
  const auto freq = simulate_walks(chain, walks, 11).frequencies();
  const double p = 1.0 / 32, sigma = std::sqrt(p * (1 - p) / walks);
  for (double f : freq) EXPECT_LE(std::abs(f - p), 4 * sigma);
  for (double v : absorption_distribution(GreenTable(chain))) EXPECT_NEAR(v, p, 1e-12);
}

TEST(Walks, UnitIntervalMatchesLinearSolve) {
  const auto g = build_builtin("unit_interval", 5).raw.graph;
  const TruncatedChain chain(g, 5);
  const auto freq = simulate_walks(chain, 100000, 5).frequencies();
  const auto nu = absorption_distribution(GreenTable(chain));
  double tv = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) tv += 0.5 * std::abs(freq[i] - nu[i]);
  EXPECT_LE(tv, 0.02);
}

TEST(Walks, ThreadCountDoesNotChangeResults) {
  const auto g = build_builtin("unit_interval", 4).raw.graph;
  const TruncatedChain chain(g, 4);
  EXPECT_EQ(simulate_walks(chain, 5000, 9, 1).counts, simulate_walks(chain, 5000, 9, 4).counts);
  EXPECT_NE(simulate_walks(chain, 5000, 9).counts, simulate_walks(chain, 5000, 10).counts);
}

TEST(Chain, Structure) {
  const auto g = build_builtin("unit_interval", 5).raw.graph;
  const TruncatedChain chain(g, 3);
  EXPECT_EQ(chain.interior().size(), 7u);
  EXPECT_EQ(chain.absorbing().size(), 8u);
  const int leaf = chain.absorbing().front();
  EXPECT_EQ(chain.transition(leaf, leaf), 1.0);
  for (int x : chain.interior()) {
    double row = 0.0;
    for (std::size_t y = 0; y < g.size(); ++y) row += chain.transition(x, static_cast<int>(y));
    EXPECT_NEAR(row, 1.0, 1e-15);
  }
  EXPECT_THROW(TruncatedChain(g, 6), InvalidArgument);
}

TEST(Green, TwoLevelPath) {
  const auto g = testing::path_fixture(1);
  const TruncatedChain chain(g, 1);
  const GreenTable green(chain);
  EXPECT_DOUBLE_EQ(green(g.root(), g.root()), 1.0);
  EXPECT_EQ(green(g.root(), 1), 0.0);
}

TEST(Green, MatchesDenseAbsorptionAndResidual) {
  for (const auto& g : {build_builtin("unit_interval", 5).raw.graph, build_builtin("sierpinski", 4).raw.graph,
                        testing::random_augmented_tree(4, 5, 3, 0.6)}) {
    const TruncatedChain chain(g, g.depth());
    const GreenTable green(chain);
    const auto nu = absorption_distribution(green);
    const auto oracle = dense_absorption(chain);
    ASSERT_EQ(nu.size(), oracle.size());
    for (std::size_t i = 0; i < nu.size(); ++i) EXPECT_NEAR(nu[i], oracle[i], 1e-12);
    EXPECT_NEAR(std::accumulate(nu.begin(), nu.end(), 0.0), 1.0, 1e-12);
    for (int y : chain.interior()) green.column(y);
    EXPECT_LT(green.residual(), kSolverTolerance);
  }
}

// (I - P) G = I on interior rows, and detailed balance deg(x) G(x,y) = deg(y) G(y,x).
TEST(Green, HarmonicityAndReversibility) {
  const auto g = build_builtin("touching_cantor", 4).raw.graph;
  const TruncatedChain chain(g, 4);
  const GreenTable green(chain);
  for (int x : chain.interior())
    for (int y : chain.interior()) {
      double pg = 0.0;
      for (int z : chain.neighbors(x)) pg += green(z, y) / chain.degree(x);
      EXPECT_NEAR(green(x, y) - pg, x == y ? 1.0 : 0.0, 1e-10);
      EXPECT_NEAR(chain.degree(x) * green(x, y), chain.degree(y) * green(y, x), 1e-10);
    }
}

TEST(Green, SmallFixtureMatchesMonteCarloVisits) {
  const auto g = testing::random_augmented_tree(8, 3, 3, 0.7);
  ASSERT_LE(g.size(), 20u);
  const TruncatedChain chain(g, 3);
  const GreenTable green(chain);
  const auto mc = simulate_visits(chain, chain.origin(), 200000, 21, 2);
  for (std::size_t i = 0; i < chain.interior().size(); ++i) {
    const double exact = green(chain.origin(), chain.interior()[i]);
    EXPECT_LE(std::abs(mc.mean[i] - exact), 3 * mc.standard_error[i]) << i;
  }
}

TEST(Green, BudgetIsEnforced) {
  const auto g = build_builtin("unit_interval", 6).raw.graph;
  const TruncatedChain chain(g, 6);
  EXPECT_THROW(GreenTable(chain, 10), BudgetExceeded);
}

TEST(Kernels, MartinAtTheOriginIsOne) {
  const auto g = build_builtin("unit_interval", 5).raw.graph;
  const TruncatedChain chain(g, 5);
  const GreenTable green(chain);
  for (int y : chain.interior()) EXPECT_NEAR(martin_kernel(green, chain.origin(), y), 1.0, 1e-12);
}

TEST(Kernels, NaimIsSymmetricOnReversibleWalks) {
  const auto g = build_builtin("unit_interval", 5).raw.graph;
  const TruncatedChain chain(g, 5);
  const GreenTable green(chain);
  for (int x : chain.interior())
    for (int y : chain.interior()) EXPECT_NEAR(naim_kernel(green, x, y) / naim_kernel(green, y, x), 1.0, 1e-10);
}

TEST(Kernels, CantorScaling) {
  const auto g = build_builtin("cantor", 6).raw.graph;
  const TruncatedChain chain(g, 6);
  const GreenTable green(chain);
  const auto rep = kernel_scaling(green);
  EXPECT_EQ(rep.branching, 2);
  EXPECT_NEAR(rep.alpha, std::log(2.0) / std::log(3.0), 1e-12);
  EXPECT_GE(rep.martin.slope, 0.85);
  EXPECT_LE(rep.martin.slope, 1.15);
  const auto sampled = kernel_scaling(green, 100, 3);
  EXPECT_EQ(sampled.samples.size(), 100u);
  EXPECT_THROW(kernel_scaling(GreenTable(TruncatedChain(testing::path_fixture(4), 4))), Unsupported);
}

TEST(Kernels, FitLine) {
  const auto r = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
  EXPECT_NEAR(r.slope, 2.0, 1e-12);
  EXPECT_NEAR(r.intercept, 1.0, 1e-12);
  EXPECT_FALSE(r.inconclusive);
  EXPECT_TRUE(fit_line({1, 1, 1}, {1, 2, 3}).inconclusive);
}

TEST(Harmonic, SymmetricTreeIsUniform) {
  const auto g = build_builtin("cantor", 6).raw.graph;
  const TruncatedChain chain(g, 6);
  const auto tv = harmonic_tv(chain, absorption_distribution(GreenTable(chain)));
  ASSERT_EQ(tv.size(), 4u);
  for (double t : tv) EXPECT_LT(t, 1e-12);
}

TEST(Harmonic, LopsidedFixtureMatchesDenseOracle) {
  const auto g = lopsided_fixture(6);
  const TruncatedChain chain(g, 6);
  const auto nu = dense_absorption(chain);
  const auto tv = harmonic_tv(chain, absorption_distribution(GreenTable(chain)));
  ASSERT_EQ(tv.size(), 4u);
  for (int m = 1; m <= 4; ++m) {
    std::map<int, double> mass;
    for (std::size_t a = 0; a < nu.size(); ++a) {
      int v = chain.absorbing()[a];
      while (g.level_of(v) > m) v = g.parents(v)[0];
      mass[v] += nu[a];
    }
    const double uniform = 1.0 / static_cast<double>(g.level(m).size());
    double expect = 0.0;
    for (int v : g.level(m)) expect += 0.5 * std::abs(mass[v] - uniform);
    EXPECT_NEAR(tv[static_cast<std::size_t>(m - 1)], expect, 1e-12) << m;
  }
  // the thin branch keeps far more than its uniform share once the bushy side has fanned out
  EXPECT_GT(tv[3], 0.1);
}

TEST(Truncation, DeltaNeedsTwoSpareLevels) {
  const auto g = build_builtin("cantor", 7).raw.graph;
  EXPECT_FALSE(truncation_delta(g, 6).has_value());
  const auto d = truncation_delta(g, 5);
  ASSERT_TRUE(d.has_value());
  EXPECT_GE(*d, 0.0);
  EXPECT_TRUE(std::isfinite(*d));
}

}  // namespace
}  // namespace augtree
