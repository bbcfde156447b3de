#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "augtree/graph.hpp"
#include "augtree/isomorphism.hpp"

namespace augtree {

/// Maximal horizontally connected vertex set of one level.
struct HorizontalComponent {
  int level = 0;
  int id = 0;                 // index within the level
  std::vector<int> vertices;  // sorted
};

/// Union-find over the level's E_h; singletons included. Throws Unsupported
/// unless the graph is equicontractive.
std::vector<HorizontalComponent> components(const AugmentedGraph& g, int level, bool include_uncertain = true);

/// T_D truncated m levels below the component: vertex colour = level offset,
/// edge colour 0 for E_v and 1 for E_h.
ColoredGraph descendant_graph(const AugmentedGraph& g, const HorizontalComponent& c, int m,
                              bool include_uncertain = true);

struct ComponentClass {
  int level = 0;      // representative: first member in level order
  int component = 0;
  std::size_t size = 0;     // vertices in the representative
  std::size_t members = 0;
};

struct ComponentClassTable {
  int iso_depth = 2;
  int levels = 0;  // components classified on levels 0..levels-1
  std::vector<std::vector<HorizontalComponent>> per_level;
  std::vector<std::vector<int>> assignment;  // [level][component] -> class id
  std::vector<ComponentClass> classes;
  std::vector<std::size_t> classes_per_level;   // distinct classes seen on each level
  std::vector<std::size_t> cumulative_classes;  // classes first seen on or before each level
};

/// Components on levels 0..depth-m, classed by isomorphism of their depth-m
/// descendant graphs. Throws InvalidArgument when depth < m + 1.
ComponentClassTable classify_components(const AugmentedGraph& g, int m, bool include_uncertain = true,
                                        int threads = 1);

struct IncidenceMatrix {
  std::vector<std::vector<std::int64_t>> a;  // a[i][j] = offspring of class i lying in class j
  std::vector<std::array<int, 2>> checked;   // second representative per class, {-1,-1} if none
};

/// Counts offspring classes on a representative of each class and repeats the
/// count on a second one. Throws ClassificationUnstable on a mismatch or when
/// some class has no member with classified offspring.
IncidenceMatrix incidence_matrix(const ComponentClassTable& table, const AugmentedGraph& g);

struct SimplicityReport {
  bool simple_evidence = false;
  std::vector<int> iso_depths;
  std::vector<std::size_t> class_counts;               // per iso depth
  std::vector<std::vector<std::size_t>> cumulative;    // per iso depth, per level
  std::optional<IncidenceMatrix> incidence;            // at the first iso depth, when stable
  std::string instability;                             // why no matrix, if none
  std::string note;
};

/// Simple evidence: at every tested m the cumulative class count is unchanged
/// over the last `window` classified levels, the counts agree across m and the
/// incidence matrix validates on two representatives.
SimplicityReport simplicity_report(const AugmentedGraph& g, const std::vector<int>& iso_depths = {2, 3},
                                   int window = 2, bool include_uncertain = true, int threads = 1);

}  // namespace augtree
