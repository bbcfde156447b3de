#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "augtree/cell.hpp"
#include "augtree/graph.hpp"

namespace augtree {

struct DistanceOptions {
  bool include_uncertain = true;
  /// Let the search pass below max(|x|, |y|). Off by default: canonical
  /// geodesics never need deeper levels.
  bool allow_descent = false;
};

/// Breadth-first distances from `source` over E_v ∪ E_h ∪ E_s, visiting only
/// levels <= max_level (negative: no limit). Unreached vertices get -1.
std::vector<int> bfs_distances(const AugmentedGraph& g, int source, int max_level = -1, bool include_uncertain = true);

/// d(x, y). Throws InternalError when y is unreachable.
int graph_distance(const AugmentedGraph& g, int x, int y, DistanceOptions options = {});

/// 2|x ∧ y| = |x| + |y| - d(x, y); twice the product keeps it an integer.
int gromov_product_twice(const AugmentedGraph& g, int x, int y, bool include_uncertain = true);
double gromov_product(const AugmentedGraph& g, int x, int y, bool include_uncertain = true);

/// Ascent of length k from x, horizontal bridge on level n, descent of length
/// k' to y. `bridge` holds the ell + 2 bridge vertices; a pure tree geodesic
/// through a common ancestor has ell = -1 and a one-vertex bridge.
struct CanonicalGeodesic {
  int ascent = 0;
  int descent = 0;
  int top_level = 0;
  int ell = -1;
  std::vector<int> bridge;
  int total_length = 0;

  /// Twice n - (ell + 1)/2.
  int gromov_twice() const { return 2 * top_level - (ell + 1); }
};

/// Minimises (|x| - m) + (|y| - m) + h_m over ancestor levels m, h_m the
/// horizontal distance between the level-m ancestors; ties go to the smallest m.
/// On pre-augmented graphs the result is a geodesic; otherwise it is only the
/// shortest path of this shape. Throws Unsupported on graphs with slanted edges.
CanonicalGeodesic canonical_geodesic(const AugmentedGraph& g, int x, int y, bool include_uncertain = true);

/// Longest horizontal geodesic per level: max over same-level pairs whose
/// horizontal distance equals their graph distance.
struct LProfile {
  std::vector<int> per_level;  // index = level
  int max = 0;
  std::vector<std::array<int, 2>> witnesses;  // one extremal pair per level (-1 when empty)
};
LProfile horizontal_geodesic_bound(const AugmentedGraph& g, bool include_uncertain = true, int threads = 1);

enum class DeltaMode { exhaustive, sampled };

inline constexpr std::size_t kExhaustiveDeltaLimit = 2000;

/// Smallest delta with |x∧y| >= min(|x∧z|, |z∧y|) - delta over the scanned
/// triples. Sampled mode draws `samples` vertices and scans all their triples,
/// giving a lower bound.
struct DeltaEstimate {
  double delta = 0.0;
  DeltaMode mode = DeltaMode::exhaustive;
  std::size_t vertices = 0;
  std::size_t triples = 0;
  std::uint64_t seed = 0;
  std::array<int, 3> witness{-1, -1, -1};
};
DeltaEstimate hyperbolicity_delta(const AugmentedGraph& g, DeltaMode mode, std::size_t samples = 0,
                                  std::uint64_t seed = 0, bool include_uncertain = true, int threads = 1);
/// Exhaustive when the graph has at most kExhaustiveDeltaLimit vertices.
DeltaEstimate hyperbolicity_delta(const AugmentedGraph& g, std::size_t samples, std::uint64_t seed,
                                  bool include_uncertain = true, int threads = 1);

struct VisualMetricParams {
  double a = 0.2;
  /// beta = -log(r) / a.
  double beta(double r) const;
  /// exp(3 delta a) < sqrt(2); a warning, not a requirement.
  bool admissible(double delta) const;
};

/// rho_a(x, y) = exp(-a |x ∧ y|), 0 on the diagonal.
double visual_metric(const AugmentedGraph& g, const VisualMetricParams& params, int x, int y);

/// C = max rho_a(x,y) / max(rho_a(x,z), rho_a(z,y)) over the scanned triples.
struct QuasiMetricConstant {
  double C = 1.0;
  DeltaEstimate scan;
  bool admissible = true;
};
QuasiMetricConstant quasi_metric_constant(const AugmentedGraph& g, const VisualMetricParams& params,
                                          std::size_t samples = 0, std::uint64_t seed = 0, int threads = 1);

/// Ratios rho_a^beta(x,y) / |iota(x) - iota(y)| over deepest-level pairs,
/// iota(x) = S_x(f_0). Pairs closer than 2 (cell diameter + net error) are
/// below the resolution floor and excluded.
struct HolderStats {
  int depth = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double implied_C = 0.0;
  std::size_t pairs = 0;
  std::size_t excluded_pairs = 0;
  std::size_t equivalence_violations = 0;  // d <= 1 pairs whose points are not within cell reach
  bool inconclusive = true;
};
HolderStats holder_distortion(const AugmentedGraph& g, const std::vector<CellApprox>& cells,
                              const VisualMetricParams& params, std::size_t max_sources = 0, std::uint64_t seed = 0,
                              int threads = 1);

/// max_i diam(A_i(z)), A_i(z) the level-i vertices on some root-to-z geodesic.
/// Throws Unsupported unless the graph passes verify_diamond.
int diamond_geodesic_divergence(const AugmentedGraph& g, int z);

/// Per level, the maximum divergence over all z on that level.
std::vector<int> divergence_profile(const AugmentedGraph& g);

/// Levels 0..depth of g, with the same vertex ids.
AugmentedGraph truncate(const AugmentedGraph& g, int depth);

}  // namespace augtree
