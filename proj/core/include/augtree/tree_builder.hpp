#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "augtree/cell.hpp"
#include "augtree/fingerprint.hpp"
#include "augtree/graph.hpp"
#include "augtree/ifs.hpp"

namespace augtree {

inline constexpr std::size_t kDefaultVertexBudget = 5'000'000;
inline constexpr double kLevelGuardBand = 1e-12;

/// The cut sets J_0..J_depth.
struct LevelSets {
  std::vector<std::vector<Word>> levels;
  /// Words whose cut-set comparison fell inside the floating-point guard band.
  std::vector<Word> guard_band;
  bool exact = true;
};

/// J_n = { w : R_w <= r^n < R_{w^-} } with r = min r_i. Exact when the ratios
/// are exact, logarithms with a 1e-12 guard band otherwise.
/// Throws BudgetExceeded once more than `budget` words would be produced.
LevelSets build_levels(const ContractionSpec& spec, int depth, std::size_t budget = kDefaultVertexBudget);

/// Tree (X, E_v) on the cut sets: each word is joined to its unique prefix one
/// level up. Throws InternalError when that prefix is missing.
AugmentedGraph build_vertical_edges(const LevelSets& levels);

struct HorizontalBuildStats {
  std::size_t candidate_pairs = 0;
  std::size_t certified = 0;
  std::size_t uncertain = 0;
};

/// Adds E_h: same-level pairs with dist(cells) <= kappa r^n, found through
/// spatial hashing of the bounding balls. Uncertain pairs are added and flagged.
HorizontalBuildStats build_horizontal_edges(AugmentedGraph& graph, const std::vector<CellApprox>& cells, double kappa,
                                            int threads = 1);

struct PreAugmentedReport {
  std::size_t edges_checked = 0;
  std::vector<std::pair<int, int>> violations;             // all edges, uncertain included
  std::vector<std::pair<int, int>> certified_violations;   // certified-only graph
  bool ok() const { return violations.empty() && certified_violations.empty(); }
};

/// Checks that every horizontal edge (x, y) has x^-1 = y^-1 or (x^-1, y^-1) in E_h.
PreAugmentedReport verify_pre_augmented(const AugmentedGraph& graph);

/// Quotient X~: same-level vertices with equal fingerprints are merged; E_v,
/// E_h and E_s are induced. `representatives[q]` is the first raw member of q.
struct QuotientResult {
  AugmentedGraph graph;
  std::vector<int> representatives;
  std::vector<int> class_of;  // raw vertex -> quotient vertex
};
QuotientResult build_quotient(const AugmentedGraph& raw, const std::vector<MapFingerprint>& fingerprints);

/// Exact (when possible) fingerprints of every vertex word.
std::vector<MapFingerprint> vertex_fingerprints(const AugmentedGraph& graph, const ContractionSpec& spec,
                                                double scale = 1.0);

/// Adds E_s: pairs on consecutive levels, not in E_v, with
/// dist(cells) <= kappa r^{min level}. Returns the number of uncertain pairs added.
std::size_t build_slanted_edges(AugmentedGraph& graph, const std::vector<CellApprox>& cells, double kappa,
                                int threads = 1);

struct DiamondReport {
  std::size_t horizontal_edges = 0;     // condition (i) needs zero
  std::size_t two_paths_checked = 0;
  std::vector<std::array<int, 3>> violations;  // (x, y, z) without a companion y'
  bool ok() const { return horizontal_edges == 0 && violations.empty(); }
};
DiamondReport verify_diamond(const AugmentedGraph& graph);

/// Horizontal edges added on top of the geometric ones.
struct ExtraEdgeRule {
  enum class Kind { wrap, pair } kind = Kind::wrap;
  Word a;  // pair rule endpoints
  Word b;
};
/// "wrap" joins 0...0 and (N-1)...(N-1) on every level; "u:v" joins two words.
std::vector<ExtraEdgeRule> parse_extra_edges(const std::string& text);
std::size_t apply_extra_edges(AugmentedGraph& graph, const std::vector<ExtraEdgeRule>& rules);

struct BuildOptions {
  int depth = 6;
  std::optional<double> kappa;  // default 0.1 |K|
  double epsilon_net = 0.0;     // 0 selects 1e-3 |K|
  bool quotient = false;
  bool slanted = false;         // E_v ∪ E_s diamond build instead of E_h
  std::size_t budget = kDefaultVertexBudget;
  std::vector<ExtraEdgeRule> extra_edges;
  int threads = 1;
};

struct BuildReport {
  double kappa = 0.0;
  double epsilon_net = 0.0;
  Interval root_diameter;
  double delta0 = 1.0;  // (A2) witness
  std::size_t guard_band_words = 0;
  bool exact_levels = true;
  bool heuristic_fingerprints = false;
  std::size_t uncertain_edges = 0;
  std::size_t uncertain_slanted = 0;
  std::size_t extra_edges = 0;
  PreAugmentedReport pre_augmented;
};

struct GeometricGraph {
  AugmentedGraph graph;
  std::vector<CellApprox> cells;  // indexed by vertex id
};

struct IfsTree {
  ContractionSpec spec;
  std::shared_ptr<const RootNet> root;
  GeometricGraph raw;
  std::optional<GeometricGraph> quotient;
  std::vector<int> quotient_class;  // raw vertex -> quotient vertex
  BuildReport report;

  /// The quotient when built, otherwise the raw graph.
  const GeometricGraph& primary() const { return quotient ? *quotient : raw; }
};

/// Levels, E_v, cells, E_h (or E_s), optional quotient and extra edges.
IfsTree build_ifs_tree(const ContractionSpec& spec, const BuildOptions& options);

/// delta_0 such that every cell diameter lies in [r^n / delta_0 - 2e, delta_0 r^n + 2e].
double a2_constant(const AugmentedGraph& graph, const std::vector<CellApprox>& cells);

/// Moran construction: level-k children of every cell are placed by the maps
/// y -> r_k y + t_{k,j} inside the unit cube J = [0,1]^d. Ratios and
/// placements are cycled when the depth exceeds the supplied sequence.
struct MoranSpec {
  int dim = 1;
  std::vector<Scalar> ratios;                       // r_1, r_2, ...
  std::vector<std::vector<std::vector<Scalar>>> translations;  // [level][child][coord]
  double ratio_floor = 1e-3;                        // inf r_k must stay above this
};

struct MoranTree {
  GeometricGraph tree;
  std::vector<int> original_level;  // n(k) per re-levelled k
  double base_ratio = 0.0;
  BuildReport report;
};

/// Re-levels the Moran coding tree at n(k) = min{ n : r_1...r_n <= r^k }.
MoranTree build_moran_tree(const MoranSpec& spec, int depth, std::optional<double> kappa = std::nullopt,
                           double epsilon_net = 0.0, std::size_t budget = kDefaultVertexBudget, int threads = 1);

/// Unit cube [0,1]^d as the attractor of its 2^d half-size maps.
ContractionSpec unit_cube_spec(int dim);

/// Closed dyadic cubes of side 2^-k meeting K. The oracle receives the integer
/// lower corner and the level.
using CubeOracle = std::function<bool(const std::vector<std::int64_t>& corner, int level)>;
GeometricGraph build_dyadic_tree(const CubeOracle& meets, int dim, int depth, double kappa = 0.1,
                                 std::size_t budget = kDefaultVertexBudget);
GeometricGraph build_dyadic_tree(const std::vector<Vec>& sample, int depth, double kappa = 0.1,
                                 std::size_t budget = kDefaultVertexBudget);

}  // namespace augtree
