#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "augtree/word.hpp"

namespace augtree {

enum class EdgeStatus : std::uint8_t { certified, uncertain };

struct HorizontalEdge {
  int to = -1;
  EdgeStatus status = EdgeStatus::certified;
};

enum class BuilderKind { ifs, moran, dyadic, imported };

std::string to_string(BuilderKind kind);
BuilderKind builder_kind_from_string(const std::string& text);

struct Vertex {
  int level = 0;
  std::vector<Word> words;          // one word in a tree, the whole class in a quotient
  std::vector<std::int64_t> cube;   // dyadic builds: lower corner in units of 2^-level
  std::string name;                 // imported fixtures

  /// "011", "011|100", "c3:1,5" or the name; "o" for the empty root word.
  std::string label() const;
};

/// Levelled graph (X, E_v ∪ E_h ∪ E_s) truncated at a finite depth.
class AugmentedGraph {
 public:
  int add_vertex(Vertex v);
  void add_vertical(int parent, int child);
  /// Symmetric; a repeated edge keeps the stronger status.
  void add_horizontal(int a, int b, EdgeStatus status = EdgeStatus::certified);
  void add_slanted(int a, int b);

  std::size_t size() const { return vertices_.size(); }
  const Vertex& vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
  int level_of(int v) const { return vertices_[static_cast<std::size_t>(v)].level; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  const std::vector<int>& level(int n) const { return levels_[static_cast<std::size_t>(n)]; }
  int root() const { return levels_.empty() || levels_[0].empty() ? -1 : levels_[0][0]; }

  const std::vector<int>& parents(int v) const { return up_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& children(int v) const { return down_[static_cast<std::size_t>(v)]; }
  const std::vector<HorizontalEdge>& horizontal(int v) const { return horiz_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& slanted(int v) const { return slant_[static_cast<std::size_t>(v)]; }

  /// Unique parent; throws Unsupported on quotient graphs and InvalidArgument at the root.
  int parent(int v) const;
  bool has_horizontal(int a, int b, bool include_uncertain = true) const;
  bool adjacent(int a, int b, bool include_uncertain = true) const;

  int degree(int v, bool include_uncertain = true) const;
  int horizontal_degree(int v, bool include_uncertain = true) const;

  template <class F>
  void for_each_neighbor(int v, F&& f, bool include_uncertain = true) const {
    const auto i = static_cast<std::size_t>(v);
    for (int u : up_[i]) f(u);
    for (int u : down_[i]) f(u);
    for (const auto& e : horiz_[i])
      if (include_uncertain || e.status == EdgeStatus::certified) f(e.to);
    for (int u : slant_[i]) f(u);
  }

  std::optional<int> find_word(const Word& w) const;

  std::size_t vertical_edge_count() const;
  std::size_t horizontal_edge_count(bool include_uncertain = true) const;
  std::size_t uncertain_edge_count() const;
  std::size_t slanted_edge_count() const;

  /// Copy with every uncertain horizontal edge removed.
  AugmentedGraph without_uncertain() const;
  /// Copy with E_h dropped (the bare tree, or E_v ∪ E_s for diamond builds).
  AugmentedGraph without_horizontal() const;

  /// Throws InternalError when a structural invariant fails.
  void validate() const;

  double kappa = 0.0;
  double base_ratio = 0.5;
  bool is_quotient = false;
  bool equicontractive = false;
  bool heuristic = false;  // built from rounded fingerprints or guard-band comparisons
  int alphabet = 0;
  int dimension = 0;
  BuilderKind builder = BuilderKind::imported;

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::vector<int>> levels_;
  std::vector<std::vector<int>> up_;
  std::vector<std::vector<int>> down_;
  std::vector<std::vector<HorizontalEdge>> horiz_;
  std::vector<std::vector<int>> slant_;
  std::unordered_map<Word, int, WordHash> word_index_;
};

}  // namespace augtree
