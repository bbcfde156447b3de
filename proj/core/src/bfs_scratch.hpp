#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "augtree/graph.hpp"

namespace augtree::detail {

/// ancestors[m] = sorted level-m vertices above x along E_v; ancestors[|x|] = {x}.
inline std::vector<std::vector<int>> ancestor_sets(const AugmentedGraph& g, int x) {
  const int lx = g.level_of(x);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(lx) + 1);
  out[static_cast<std::size_t>(lx)] = {x};
  for (int m = lx; m > 0; --m) {
    auto& up = out[static_cast<std::size_t>(m) - 1];
    for (int v : out[static_cast<std::size_t>(m)])
      for (int p : g.parents(v)) up.push_back(p);
    std::sort(up.begin(), up.end());
    up.erase(std::unique(up.begin(), up.end()), up.end());
  }
  return out;
}

/// Reusable BFS state: visits are stamped, so clearing costs nothing.
class BfsScratch {
 public:
  explicit BfsScratch(std::size_t n) : stamp_(n, 0), dist_(n, 0), from_(n, -1), mark_(n, 0) {}

  /// Full-graph distance restricted to levels <= cap (cap < 0: no limit); -1 if unreachable.
  int distance(const AugmentedGraph& g, int x, int y, int cap, bool include_uncertain) {
    begin();
    visit(x, 0, -1);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const int v = queue_[head];
      if (v == y) return dist(v);
      const int dv = dist(v);
      g.for_each_neighbor(
          v,
          [&](int u) {
            if (seen(u) || (cap >= 0 && g.level_of(u) > cap)) return;
            visit(u, dv + 1, v);
          },
          include_uncertain);
    }
    return -1;
  }

  /// Horizontal distance between two vertex sets if it is at most cap, else -1.
  int horizontal_distance(const AugmentedGraph& g, const std::vector<int>& sources, const std::vector<int>& targets,
                          int cap, bool include_uncertain) {
    if (cap < 0) return -1;
    ++target_epoch_;
    for (int t : targets) mark_[static_cast<std::size_t>(t)] = target_epoch_;
    begin();
    for (int s : sources) {
      if (mark_[static_cast<std::size_t>(s)] == target_epoch_) return 0;
      if (!seen(s)) visit(s, 0, -1);
    }
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const int v = queue_[head];
      const int dv = dist(v);
      if (dv >= cap) break;
      for (const auto& e : g.horizontal(v)) {
        if (!include_uncertain && e.status != EdgeStatus::certified) continue;
        if (seen(e.to)) continue;
        if (mark_[static_cast<std::size_t>(e.to)] == target_epoch_) return dv + 1;
        visit(e.to, dv + 1, v);
      }
    }
    return -1;
  }

  /// Shortest horizontal path from the smallest reachable source to the first
  /// target found; sources and targets are processed in ascending id order.
  std::vector<int> horizontal_path(const AugmentedGraph& g, const std::vector<int>& sources,
                                   const std::vector<int>& targets, bool include_uncertain) {
    ++target_epoch_;
    for (int t : targets) mark_[static_cast<std::size_t>(t)] = target_epoch_;
    begin();
    int hit = -1;
    for (int s : sources) {
      if (!seen(s)) visit(s, 0, -1);
      if (hit < 0 && mark_[static_cast<std::size_t>(s)] == target_epoch_) hit = s;
    }
    for (std::size_t head = 0; hit < 0 && head < queue_.size(); ++head) {
      const int v = queue_[head];
      std::vector<int> next;
      for (const auto& e : g.horizontal(v))
        if (include_uncertain || e.status == EdgeStatus::certified) next.push_back(e.to);
      std::sort(next.begin(), next.end());
      for (int u : next) {
        if (seen(u)) continue;
        visit(u, dist(v) + 1, v);
        if (mark_[static_cast<std::size_t>(u)] == target_epoch_) {
          hit = u;
          break;
        }
      }
    }
    std::vector<int> path;
    for (int v = hit; v >= 0; v = from_[static_cast<std::size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  }

  /// Horizontal BFS from x that only expands vertices accepted by
  /// keep(z, h); x itself is always expanded.
  template <class Keep>
  void horizontal_geodesic_ball(const AugmentedGraph& g, int x, bool include_uncertain, Keep&& keep) {
    begin();
    visit(x, 0, -1);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const int v = queue_[head];
      const int dv = dist(v);
      if (v != x && !keep(v, dv)) continue;
      for (const auto& e : g.horizontal(v)) {
        if (!include_uncertain && e.status != EdgeStatus::certified) continue;
        if (!seen(e.to)) visit(e.to, dv + 1, v);
      }
    }
  }

 private:
  void begin() {
    ++epoch_;
    queue_.clear();
  }
  bool seen(int v) const { return stamp_[static_cast<std::size_t>(v)] == epoch_; }
  int dist(int v) const { return dist_[static_cast<std::size_t>(v)]; }
  void visit(int v, int d, int from) {
    const auto i = static_cast<std::size_t>(v);
    stamp_[i] = epoch_;
    dist_[i] = d;
    from_[i] = from;
    queue_.push_back(v);
  }

  std::vector<std::uint32_t> stamp_;
  std::vector<int> dist_;
  std::vector<int> from_;
  std::vector<std::uint32_t> mark_;
  std::vector<int> queue_;
  std::uint32_t epoch_ = 0;
  std::uint32_t target_epoch_ = 0;
};

}  // namespace augtree::detail
