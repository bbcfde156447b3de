#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "augtree/cell.hpp"
#include "augtree/fingerprint.hpp"
#include "augtree/graph.hpp"
#include "augtree/tree_builder.hpp"

namespace augtree {

struct LevelDegrees {
  int level = 0;
  std::size_t vertices = 0;
  int max_degree = 0;
  double mean_degree = 0.0;
  int witness = -1;  // a vertex of maximal degree
  std::map<int, std::size_t> histogram;
  // Edges charged to this level: E_v and E_s towards level - 1, E_h inside it.
  std::size_t vertical = 0;
  std::size_t horizontal = 0;
  std::size_t slanted = 0;
};

struct DegreeProfile {
  std::vector<LevelDegrees> levels;
  int max_degree = 0;
  double mean_degree = 0.0;
  std::map<int, std::size_t> histogram;
  std::size_t vertical_edges = 0;
  std::size_t horizontal_edges = 0;
  std::size_t slanted_edges = 0;
  bool quotient = false;
  bool include_uncertain = true;
};

DegreeProfile degree_profile(const AugmentedGraph& g, bool include_uncertain = true);

struct CoincidenceReport {
  std::vector<std::pair<Word, Word>> pairs;  // x < y, S_x = S_y
  std::size_t words_checked = 0;
  bool heuristic = false;
};

/// All coincident pairs among words of length <= depth, by fingerprint buckets.
CoincidenceReport coincidence_search(const ContractionSpec& spec, int depth,
                                     std::size_t budget = kDefaultVertexBudget);

struct BallHit {
  std::size_t raw = 0;       // cells meeting the ball
  std::size_t distinct = 0;  // distinct maps among them
  std::size_t uncertain = 0; // hits that could not be certified
};

/// Cells of `level` meeting B(center, radius); uncertain contacts count as hits.
BallHit ball_cell_count(const AugmentedGraph& g, const std::vector<CellApprox>& cells,
                        const std::vector<MapFingerprint>& fingerprints, int level, const Vec& center, double radius);

struct BallCountLevel {
  int level = 0;
  double radius = 0.0;
  std::size_t balls = 0;
  std::size_t max_raw = 0;
  std::size_t max_distinct = 0;
  std::size_t uncertain = 0;
};

struct BallCountReport {
  double c = 1.0;
  std::size_t trials = 0;  // 0: one ball per cell representative
  std::uint64_t seed = 0;
  std::vector<BallCountLevel> levels;
  std::size_t max_raw = 0;
  std::size_t max_distinct = 0;
};

/// Balls of radius c r^n centred on points of K, for every level n >= 1.
BallCountReport ball_intersection_count(const AugmentedGraph& g, const std::vector<CellApprox>& cells,
                                        const std::vector<MapFingerprint>& fingerprints, double c,
                                        std::size_t trials = 0, std::uint64_t seed = 0, int threads = 1);

enum class Evidence { bounded, unbounded, inconclusive };
std::string to_string(Evidence e);

struct GrowthThresholds {
  double bounded = 0.05;
  double unbounded = 0.2;
};

/// Evidence at a finite depth only; never a proof.
struct SeparationVerdict {
  Evidence evidence = Evidence::inconclusive;
  double slope = 0.0;                 // least squares of log(max degree) against depth
  std::vector<int> depths;            // fitted depths
  std::vector<int> max_degree;        // max degree of the graph truncated at each depth
  std::vector<int> witnesses;         // vertices of max degree
};

/// Fits log M(n) against n over the levels ceil(D/2)..D-1, M(n) the maximum
/// degree over levels 1..n. The deepest level is left out: its vertices have
/// no children.
SeparationVerdict degree_growth(const DegreeProfile& profile, GrowthThresholds thresholds = {});

struct OscWscVerdict {
  SeparationVerdict osc;  // from (X, E)
  SeparationVerdict wsc;  // from the quotient
  CoincidenceReport coincidences;
  int depth = 0;
};

/// Needs a tree built with the quotient. Coincidences are searched up to
/// coincidence_depth (0: min(depth, 8)).
OscWscVerdict osc_wsc_verdict(const IfsTree& tree, GrowthThresholds thresholds = {}, int coincidence_depth = 0);
OscWscVerdict osc_wsc_verdict(const ContractionSpec& spec, int depth, GrowthThresholds thresholds = {});

}  // namespace augtree
