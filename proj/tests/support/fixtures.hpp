#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "augtree/graph.hpp"

namespace augtree::testing {

/// Level n holds v(n, 0..n) joined in a path; v(n, j) hangs below
/// v(n-1, min(j, n-1)). Horizontal geodesics grow: L(n) = n.
AugmentedGraph grid_fixture(int depth);

/// Pascal-triangle lattice with E_v ∪ E_s: (n, j) meets (n-1, j-1) and
/// (n-1, j). Passes the diamond conditions; geodesic divergence is unbounded.
AugmentedGraph diamond_lattice(int depth);

/// Two component classes: a singleton A whose two children form a connected
/// pair B, and B whose vertices each have one child, giving two singleton A's.
/// Incidence matrix [[0, 1], [2, 0]].
AugmentedGraph two_class_fixture(int depth);

/// Single path: one vertex per level.
AugmentedGraph path_fixture(int depth);

/// Random pre-augmented tree: every vertex above `depth` gets 1..max_children
/// children, and same-level pairs whose parents coincide or are joined get a
/// horizontal edge with probability p (pairs adjacent in level order) or p/4
/// (any other pair). A fraction of the edges is marked uncertain.
AugmentedGraph random_augmented_tree(std::uint64_t seed, int depth, int max_children = 3, double p = 0.5,
                                     double uncertain = 0.0);

/// All-pairs distances by Floyd-Warshall over the whole graph.
std::vector<std::vector<int>> all_pairs_oracle(const AugmentedGraph& g, bool include_uncertain = true);

}  // namespace augtree::testing
