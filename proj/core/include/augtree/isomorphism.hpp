#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace augtree {

/// Small vertex- and edge-coloured undirected graph.
struct ColoredGraph {
  std::vector<int> color;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbour, edge colour)

  int size() const { return static_cast<int>(color.size()); }
  int add_vertex(int c);
  void add_edge(int a, int b, int edge_color);
};

/// Weisfeiler-Leman invariant: equal for isomorphic graphs.
std::uint64_t wl_hash(const ColoredGraph& g, int rounds = 3);

/// Exact colour-preserving isomorphism test: joint colour refinement on the
/// disjoint union, with individualisation and backtracking on ties.
bool isomorphic(const ColoredGraph& a, const ColoredGraph& b);

}  // namespace augtree
