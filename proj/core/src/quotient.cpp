#include <algorithm>
#include <unordered_map>

#include "augtree/error.hpp"
#include "augtree/tree_builder.hpp"

namespace augtree {

QuotientResult build_quotient(const AugmentedGraph& raw, const std::vector<MapFingerprint>& fingerprints) {
  if (fingerprints.size() != raw.size()) throw InvalidArgument("one fingerprint per vertex is required");
  QuotientResult out;
  out.class_of.assign(raw.size(), -1);
  AugmentedGraph& q = out.graph;
  q.kappa = raw.kappa;
  q.base_ratio = raw.base_ratio;
  q.is_quotient = true;
  q.equicontractive = raw.equicontractive;
  q.alphabet = raw.alphabet;
  q.dimension = raw.dimension;
  q.builder = raw.builder;
  q.heuristic = raw.heuristic ||
                std::any_of(fingerprints.begin(), fingerprints.end(), [](const MapFingerprint& f) { return f.heuristic; });

  for (int n = 0; n <= raw.depth(); ++n) {
    std::unordered_map<std::string, int> classes;
    std::vector<std::vector<Word>> members;
    std::vector<int> first;
    for (int v : raw.level(n)) {
      const auto& key = fingerprints[static_cast<std::size_t>(v)].key;
      auto [it, inserted] = classes.emplace(key, static_cast<int>(members.size()));
      if (inserted) {
        members.emplace_back();
        first.push_back(v);
      }
      auto& m = members[static_cast<std::size_t>(it->second)];
      m.insert(m.end(), raw.vertex(v).words.begin(), raw.vertex(v).words.end());
      out.class_of[static_cast<std::size_t>(v)] = it->second;  // local index, fixed below
    }
    std::vector<int> ids;
    for (std::size_t c = 0; c < members.size(); ++c) {
      Vertex vx;
      vx.level = n;
      vx.words = std::move(members[c]);
      std::sort(vx.words.begin(), vx.words.end());
      ids.push_back(q.add_vertex(std::move(vx)));
      out.representatives.push_back(first[c]);
    }
    for (int v : raw.level(n)) out.class_of[static_cast<std::size_t>(v)] = ids[static_cast<std::size_t>(out.class_of[static_cast<std::size_t>(v)])];
  }

  for (std::size_t v = 0; v < raw.size(); ++v) {
    const int cv = out.class_of[v];
    for (int p : raw.parents(static_cast<int>(v))) q.add_vertical(out.class_of[static_cast<std::size_t>(p)], cv);
  }
  for (std::size_t v = 0; v < raw.size(); ++v) {
    const int cv = out.class_of[v];
    for (const auto& e : raw.horizontal(static_cast<int>(v))) {
      const int cu = out.class_of[static_cast<std::size_t>(e.to)];
      if (cu != cv) q.add_horizontal(cv, cu, e.status);
    }
    for (int s : raw.slanted(static_cast<int>(v))) {
      const int cu = out.class_of[static_cast<std::size_t>(s)];
      const int lower = q.level_of(cu) > q.level_of(cv) ? cu : cv;
      const int upper = lower == cu ? cv : cu;
      // Identification can turn a slanted pair into a vertical one.
      if (std::find(q.parents(lower).begin(), q.parents(lower).end(), upper) == q.parents(lower).end())
        q.add_slanted(cv, cu);
    }
  }
  return out;
}

}  // namespace augtree
