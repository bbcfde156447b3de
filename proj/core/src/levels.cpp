#include <cmath>
#include <unordered_map>

#include "augtree/error.hpp"
#include "augtree/tree_builder.hpp"

namespace augtree {
namespace {

void charge(std::size_t& used, std::size_t amount, std::size_t budget) {
  used += amount;
  if (used > budget)
    throw BudgetExceeded("level construction exceeds the vertex budget of " + std::to_string(budget));
}

// Cut-set refinement with exact ratios: extend each word of J_{n-1} until R_w <= r^n.
LevelSets exact_levels(const ContractionSpec& spec, int depth, std::size_t budget) {
  LevelSets out;
  const QuadNumber r = *spec.exact_min_ratio();
  struct Item {
    Word w;
    QuadNumber R;
  };
  std::vector<Item> current{{Word{}, QuadNumber(1)}};
  out.levels.push_back({Word{}});
  std::size_t used = 1;
  QuadNumber threshold(1);
  for (int n = 1; n <= depth; ++n) {
    threshold *= r;
    std::vector<Item> next;
    for (const auto& item : current) {
      std::vector<Item> stack;
      // Depth-first in reverse letter order keeps each level lexicographic.
      for (std::size_t i = spec.size(); i-- > 0;)
        stack.push_back({item.w.extended(static_cast<Letter>(i)), item.R * *spec[i].exact_ratio});
      while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        if (it.R <= threshold) {
          charge(used, 1, budget);
          next.push_back(std::move(it));
          continue;
        }
        for (std::size_t i = spec.size(); i-- > 0;)
          stack.push_back({it.w.extended(static_cast<Letter>(i)), it.R * *spec[i].exact_ratio});
      }
    }
    out.levels.emplace_back();
    for (const auto& it : next) out.levels.back().push_back(it.w);
    current = std::move(next);
  }
  return out;
}

LevelSets float_levels(const ContractionSpec& spec, int depth, std::size_t budget) {
  LevelSets out;
  out.exact = false;
  const double log_r = std::log(spec.min_ratio());
  struct Item {
    Word w;
    double log_R;
  };
  std::vector<Item> current{{Word{}, 0.0}};
  out.levels.push_back({Word{}});
  std::size_t used = 1;
  for (int n = 1; n <= depth; ++n) {
    const double threshold = n * log_r;
    std::vector<Item> next;
    for (const auto& item : current) {
      std::vector<Item> stack;
      for (std::size_t i = spec.size(); i-- > 0;)
        stack.push_back({item.w.extended(static_cast<Letter>(i)), item.log_R + std::log(spec[i].max_ratio)});
      while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        const double diff = it.log_R - threshold;
        if (std::abs(diff) <= kLevelGuardBand) out.guard_band.push_back(it.w);
        if (diff <= kLevelGuardBand) {
          charge(used, 1, budget);
          next.push_back(std::move(it));
          continue;
        }
        for (std::size_t i = spec.size(); i-- > 0;)
          stack.push_back({it.w.extended(static_cast<Letter>(i)), it.log_R + std::log(spec[i].max_ratio)});
      }
    }
    out.levels.emplace_back();
    for (const auto& it : next) out.levels.back().push_back(it.w);
    current = std::move(next);
  }
  return out;
}

}  // namespace

LevelSets build_levels(const ContractionSpec& spec, int depth, std::size_t budget) {
  if (spec.size() == 0) throw InvalidArgument("empty contraction spec");
  if (depth < 0) throw InvalidArgument("depth must be >= 0");

  if (spec.equicontractive()) {
    // J_n = Σ^n; the size is known up front.
    std::size_t total = 1;
    std::size_t width = 1;
    for (int n = 1; n <= depth; ++n) {
      width *= spec.size();
      total += width;
      if (total > budget)
        throw BudgetExceeded("depth " + std::to_string(depth) + " needs more than " + std::to_string(budget) +
                             " vertices");
    }
    LevelSets out;
    out.exact = spec.exact_min_ratio().has_value();
    out.levels.push_back({Word{}});
    for (int n = 1; n <= depth; ++n) {
      std::vector<Word> level;
      level.reserve(out.levels.back().size() * spec.size());
      for (const auto& w : out.levels.back())
        for (std::size_t i = 0; i < spec.size(); ++i) level.push_back(w.extended(static_cast<Letter>(i)));
      out.levels.push_back(std::move(level));
    }
    return out;
  }
  if (spec.exact_min_ratio()) return exact_levels(spec, depth, budget);
  return float_levels(spec, depth, budget);
}

AugmentedGraph build_vertical_edges(const LevelSets& levels) {
  AugmentedGraph g;
  if (levels.levels.empty()) return g;
  std::unordered_map<Word, int, WordHash> previous;
  for (std::size_t n = 0; n < levels.levels.size(); ++n) {
    std::unordered_map<Word, int, WordHash> current;
    for (const auto& w : levels.levels[n]) {
      Vertex v;
      v.level = static_cast<int>(n);
      v.words = {w};
      const int id = g.add_vertex(std::move(v));
      current.emplace(w, id);
      if (n == 0) continue;
      int parent = -1;
      for (std::size_t len = w.size(); len-- > 0;) {
        auto it = previous.find(w.prefix(len));
        if (it != previous.end()) {
          parent = it->second;
          break;
        }
      }
      if (parent < 0) throw InternalError("word " + w.to_string() + " has no prefix on level " + std::to_string(n - 1));
      g.add_vertical(parent, id);
    }
    previous = std::move(current);
  }
  return g;
}

}  // namespace augtree
