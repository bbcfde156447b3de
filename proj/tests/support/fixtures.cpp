#include "fixtures.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace augtree::testing {

namespace {

Vertex named(int level, const std::string& name) {
  Vertex v;
  v.level = level;
  v.name = name;
  return v;
}

}  // namespace

AugmentedGraph grid_fixture(int depth) {
  AugmentedGraph g;
  g.equicontractive = true;
  std::vector<std::vector<int>> id(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n)
    for (int j = 0; j <= n; ++j)
      id[static_cast<std::size_t>(n)].push_back(g.add_vertex(named(n, "g" + std::to_string(n) + "_" + std::to_string(j))));
  for (int n = 1; n <= depth; ++n)
    for (int j = 0; j <= n; ++j) {
      const auto un = static_cast<std::size_t>(n);
      g.add_vertical(id[un - 1][static_cast<std::size_t>(std::min(j, n - 1))], id[un][static_cast<std::size_t>(j)]);
      if (j > 0) g.add_horizontal(id[un][static_cast<std::size_t>(j) - 1], id[un][static_cast<std::size_t>(j)]);
    }
  g.validate();
  return g;
}

AugmentedGraph diamond_lattice(int depth) {
  AugmentedGraph g;
  std::vector<std::vector<int>> id(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n)
    for (int j = 0; j <= n; ++j)
      id[static_cast<std::size_t>(n)].push_back(g.add_vertex(named(n, "d" + std::to_string(n) + "_" + std::to_string(j))));
  for (int n = 1; n <= depth; ++n)
    for (int j = 0; j <= n; ++j) {
      const auto un = static_cast<std::size_t>(n);
      const int up = std::min(j, n - 1);
      g.add_vertical(id[un - 1][static_cast<std::size_t>(up)], id[un][static_cast<std::size_t>(j)]);
      if (j >= 1 && j - 1 != up) g.add_slanted(id[un - 1][static_cast<std::size_t>(j) - 1], id[un][static_cast<std::size_t>(j)]);
    }
  g.validate();
  return g;
}

AugmentedGraph two_class_fixture(int depth) {
  AugmentedGraph g;
  g.equicontractive = true;
  g.alphabet = 2;
  struct Comp {
    bool pair;
    std::vector<int> vs;
  };
  int counter = 0;
  auto make = [&](int level) { return g.add_vertex(named(level, "t" + std::to_string(counter++))); };
  std::vector<Comp> layer{{false, {make(0)}}};
  for (int n = 1; n <= depth; ++n) {
    std::vector<Comp> next;
    for (const auto& c : layer) {
      if (!c.pair) {
        const int a = make(n), b = make(n);
        g.add_vertical(c.vs[0], a);
        g.add_vertical(c.vs[0], b);
        g.add_horizontal(a, b);
        next.push_back({true, {a, b}});
      } else {
        for (int v : c.vs) {
          const int a = make(n);
          g.add_vertical(v, a);
          next.push_back({false, {a}});
        }
      }
    }
    layer = std::move(next);
  }
  g.validate();
  return g;
}

AugmentedGraph path_fixture(int depth) {
  AugmentedGraph g;
  g.alphabet = 1;
  g.equicontractive = true;
  int prev = g.add_vertex(named(0, "p0"));
  for (int n = 1; n <= depth; ++n) {
    const int v = g.add_vertex(named(n, "p" + std::to_string(n)));
    g.add_vertical(prev, v);
    prev = v;
  }
  return g;
}

AugmentedGraph random_augmented_tree(std::uint64_t seed, int depth, int max_children, double p, double uncertain) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  AugmentedGraph g;
  int counter = 0;
  auto make = [&](int level) { return g.add_vertex(named(level, "r" + std::to_string(counter++))); };
  std::vector<int> layer{make(0)};
  for (int n = 1; n <= depth; ++n) {
    std::vector<int> next;
    for (int parent : layer) {
      const int kids = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_children));
      for (int k = 0; k < kids; ++k) {
        const int c = make(n);
        g.add_vertical(parent, c);
        next.push_back(c);
      }
    }
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = i + 1; j < next.size(); ++j) {
        const int a = g.parent(next[i]), b = g.parent(next[j]);
        if (a != b && !g.has_horizontal(a, b)) continue;
        if (coin(rng) >= (j == i + 1 ? p : p / 4)) continue;
        g.add_horizontal(next[i], next[j], coin(rng) < uncertain ? EdgeStatus::uncertain : EdgeStatus::certified);
      }
    layer = std::move(next);
  }
  g.validate();
  return g;
}

std::vector<std::vector<int>> all_pairs_oracle(const AugmentedGraph& g, bool include_uncertain) {
  const std::size_t n = g.size();
  constexpr int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int p : g.parents(static_cast<int>(i))) d[i][static_cast<std::size_t>(p)] = d[static_cast<std::size_t>(p)][i] = 1;
    for (const auto& e : g.horizontal(static_cast<int>(i)))
      if (include_uncertain || e.status == EdgeStatus::certified) d[i][static_cast<std::size_t>(e.to)] = 1;
    for (int s : g.slanted(static_cast<int>(i))) d[i][static_cast<std::size_t>(s)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

}  // namespace augtree::testing
