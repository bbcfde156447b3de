#include "augtree/metric.hpp"

#include <algorithm>
#include <limits>

#include "augtree/error.hpp"
#include "augtree/tree_builder.hpp"
#include "bfs_scratch.hpp"
#include "parallel.hpp"

namespace augtree {

using detail::BfsScratch;

std::vector<int> bfs_distances(const AugmentedGraph& g, int source, int max_level, bool include_uncertain) {
  std::vector<int> dist(g.size(), -1);
  std::vector<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    const int dv = dist[static_cast<std::size_t>(v)];
    g.for_each_neighbor(
        v,
        [&](int u) {
          if (dist[static_cast<std::size_t>(u)] >= 0) return;
          if (max_level >= 0 && g.level_of(u) > max_level) return;
          dist[static_cast<std::size_t>(u)] = dv + 1;
          queue.push_back(u);
        },
        include_uncertain);
  }
  return dist;
}

int graph_distance(const AugmentedGraph& g, int x, int y, DistanceOptions options) {
  if (x == y) return 0;
  const int cap = options.allow_descent ? -1 : std::max(g.level_of(x), g.level_of(y));
  BfsScratch s(g.size());
  const int d = s.distance(g, x, y, cap, options.include_uncertain);
  if (d < 0) throw InternalError("vertices " + g.vertex(x).label() + " and " + g.vertex(y).label() + " are disconnected");
  return d;
}

int gromov_product_twice(const AugmentedGraph& g, int x, int y, bool include_uncertain) {
  return g.level_of(x) + g.level_of(y) - graph_distance(g, x, y, {include_uncertain, false});
}

double gromov_product(const AugmentedGraph& g, int x, int y, bool include_uncertain) {
  return 0.5 * gromov_product_twice(g, x, y, include_uncertain);
}

CanonicalGeodesic canonical_geodesic(const AugmentedGraph& g, int x, int y, bool include_uncertain) {
  if (g.slanted_edge_count() > 0) throw Unsupported("canonical geodesics need a graph without slanted edges");
  CanonicalGeodesic out;
  if (x == y) {
    out.top_level = g.level_of(x);
    out.bridge = {x};
    return out;
  }
  BfsScratch s(g.size());
  const auto ax = detail::ancestor_sets(g, x);
  const auto ay = detail::ancestor_sets(g, y);
  const int lx = g.level_of(x);
  const int ly = g.level_of(y);

  // Through the root: every graph here has a single level-0 vertex.
  int best = lx + ly;
  int best_m = 0;
  for (int m = std::min(lx, ly); m >= 1; --m) {
    const int vertical = (lx - m) + (ly - m);
    if (vertical > best) break;
    const int h = s.horizontal_distance(g, ax[static_cast<std::size_t>(m)], ay[static_cast<std::size_t>(m)],
                                        best - vertical, include_uncertain);
    if (h >= 0 && vertical + h <= best) {
      best = vertical + h;
      best_m = m;
    }
  }
  // Smaller m wins ties, so rescan upward from the best level found.
  for (int m = best_m - 1; m >= 0; --m) {
    const int vertical = (lx - m) + (ly - m);
    if (vertical > best) break;
    const int h = s.horizontal_distance(g, ax[static_cast<std::size_t>(m)], ay[static_cast<std::size_t>(m)],
                                        best - vertical, include_uncertain);
    if (h >= 0 && vertical + h <= best) best_m = m;
  }

  out.top_level = best_m;
  out.ascent = lx - best_m;
  out.descent = ly - best_m;
  out.bridge = s.horizontal_path(g, ax[static_cast<std::size_t>(best_m)], ay[static_cast<std::size_t>(best_m)],
                                 include_uncertain);
  out.ell = static_cast<int>(out.bridge.size()) - 2;
  out.total_length = out.ascent + out.descent + out.ell + 1;
  if (out.total_length != best) throw InternalError("canonical geodesic reconstruction mismatch");
  return out;
}

LProfile horizontal_geodesic_bound(const AugmentedGraph& g, bool include_uncertain, int threads) {
  LProfile out;
  out.per_level.assign(static_cast<std::size_t>(g.depth()) + 1, 0);
  out.witnesses.assign(static_cast<std::size_t>(g.depth()) + 1, {-1, -1});

  // The ancestor-level shortcut test relies on canonical geodesics, which
  // pre-augmented trees guarantee. Quotients (several parents), slanted edges
  // and anything else get full BFS distances.
  const auto pre = verify_pre_augmented(g);
  bool canonical = (include_uncertain ? pre.violations.empty() : pre.certified_violations.empty()) &&
                   g.slanted_edge_count() == 0;
  for (std::size_t v = 0; canonical && v < g.size(); ++v) canonical = g.parents(static_cast<int>(v)).size() <= 1;

  for (int n = 1; n <= g.depth(); ++n) {
    const auto& ids = g.level(n);
    const std::size_t chunks = detail::chunk_count(ids.size(), threads);
    std::vector<int> best(chunks, 0);
    std::vector<std::array<int, 2>> witness(chunks, {-1, -1});
    detail::parallel_chunks(ids.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t c) {
      BfsScratch outer(g.size());
      BfsScratch inner(g.size());
      for (std::size_t i = begin; i < end; ++i) {
        const int x = ids[i];
        if (!canonical) {
          const auto d = bfs_distances(g, x, -1, include_uncertain);
          outer.horizontal_geodesic_ball(g, x, include_uncertain, [&](int z, int h) {
            if (h == d[static_cast<std::size_t>(z)] && h > best[c]) {
              best[c] = h;
              witness[c] = {x, z};
            }
            return true;
          });
          continue;
        }
        const auto ax = detail::ancestor_sets(g, x);
        outer.horizontal_geodesic_ball(g, x, include_uncertain, [&](int z, int h) {
          // z is a horizontal geodesic end iff no ancestor level gives a shortcut.
          // Pruning can overstate h for vertices behind rejected ones; a
          // shorter purely horizontal route exposes those.
          if (h >= 2 && inner.horizontal_distance(g, {x}, {z}, h - 1, include_uncertain) >= 0) return false;
          const auto az = detail::ancestor_sets(g, z);
          for (int m = n - 1; m >= 0; --m) {
            const int vertical = 2 * (n - m);
            if (vertical >= h) break;
            if (inner.horizontal_distance(g, ax[static_cast<std::size_t>(m)], az[static_cast<std::size_t>(m)],
                                          h - vertical - 1, include_uncertain) >= 0)
              return false;
          }
          if (h > best[c]) {
            best[c] = h;
            witness[c] = {x, z};
          }
          return true;
        });
      }
    });
    for (std::size_t c = 0; c < chunks; ++c)
      if (best[c] > out.per_level[static_cast<std::size_t>(n)]) {
        out.per_level[static_cast<std::size_t>(n)] = best[c];
        out.witnesses[static_cast<std::size_t>(n)] = witness[c];
      }
    out.max = std::max(out.max, out.per_level[static_cast<std::size_t>(n)]);
  }
  return out;
}

AugmentedGraph truncate(const AugmentedGraph& g, int depth) {
  AugmentedGraph out;
  out.kappa = g.kappa;
  out.base_ratio = g.base_ratio;
  out.is_quotient = g.is_quotient;
  out.equicontractive = g.equicontractive;
  out.heuristic = g.heuristic;
  out.alphabet = g.alphabet;
  out.dimension = g.dimension;
  out.builder = g.builder;
  int last_level = 0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    const int lv = g.level_of(static_cast<int>(v));
    if (lv < last_level) throw InvalidArgument("truncate needs vertices stored level by level");
    last_level = lv;
    if (lv > depth) break;
    out.add_vertex(g.vertex(static_cast<int>(v)));
  }
  const int n = static_cast<int>(out.size());
  for (int v = 0; v < n; ++v) {
    for (int p : g.parents(v)) out.add_vertical(p, v);
    for (const auto& e : g.horizontal(v))
      if (e.to < n && e.to > v) out.add_horizontal(v, e.to, e.status);
    for (int s : g.slanted(v))
      if (s < n && s > v) out.add_slanted(v, s);
  }
  return out;
}

}  // namespace augtree
