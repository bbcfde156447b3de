#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "augtree/error.hpp"
#include "augtree/metric.hpp"
#include "augtree/tree_builder.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace augtree {

namespace {

struct HolderPartial {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::size_t pairs = 0;
  std::size_t excluded = 0;
  std::size_t violations = 0;
};

}  // namespace

HolderStats holder_distortion(const AugmentedGraph& g, const std::vector<CellApprox>& cells,
                              const VisualMetricParams& params, std::size_t max_sources, std::uint64_t seed,
                              int threads) {
  if (cells.size() < g.size()) throw InvalidArgument("holder_distortion needs a cell for every vertex");
  const double r = g.base_ratio;
  params.beta(r);  // validates a and r; rho_a^beta = r^|x∧y|
  HolderStats out;
  out.depth = g.depth();
  if (out.depth < 1) return out;
  const auto& deepest = g.level(out.depth);
  std::vector<Vec> points(deepest.size());
  for (std::size_t i = 0; i < deepest.size(); ++i)
    points[i] = cells[static_cast<std::size_t>(deepest[i])].representative();
  const double edge_reach = g.kappa * std::pow(r, out.depth);

  const auto order = detail::sample_indices(deepest.size(), max_sources == 0 ? deepest.size() : max_sources, seed);
  const std::size_t chunks = detail::chunk_count(order.size(), threads);
  std::vector<HolderPartial> part(chunks);
  detail::parallel_chunks(order.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t c) {
    auto& p = part[c];
    for (std::size_t s = begin; s < end; ++s) {
      const std::size_t i = order[s];
      const int x = deepest[i];
      const auto dist = bfs_distances(g, x);
      const auto& cx = cells[static_cast<std::size_t>(x)];
      for (std::size_t j = 0; j < deepest.size(); ++j) {
        if (j == i || (max_sources == 0 && j < i)) continue;
        const int y = deepest[j];
        const auto& cy = cells[static_cast<std::size_t>(y)];
        const int d = dist[static_cast<std::size_t>(y)];
        if (d < 0) throw InternalError("graph is disconnected");
        const double diff = (points[i] - points[j]).norm();
        if (d <= 1) {
          const double reach = cx.diameter.hi + cy.diameter.hi + edge_reach + 2.0 * (cx.net_error + cy.net_error);
          if (diff > reach) ++p.violations;
        }
        const double floor = 2.0 * (std::max(cx.diameter.hi, cy.diameter.hi) + std::max(cx.net_error, cy.net_error));
        if (diff < floor) {
          ++p.excluded;
          continue;
        }
        const double gromov = 0.5 * (2 * out.depth - d);
        const double ratio = std::pow(r, gromov) / diff;
        p.lo = std::min(p.lo, ratio);
        p.hi = std::max(p.hi, ratio);
        ++p.pairs;
      }
    }
  });
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& p : part) {
    lo = std::min(lo, p.lo);
    out.max_ratio = std::max(out.max_ratio, p.hi);
    out.pairs += p.pairs;
    out.excluded_pairs += p.excluded;
    out.equivalence_violations += p.violations;
  }
  if (out.pairs > 0) {
    out.min_ratio = lo;
    out.implied_C = std::max(out.max_ratio, 1.0 / out.min_ratio);
    out.inconclusive = false;
  }
  return out;
}

namespace {

class DistanceCache {
 public:
  explicit DistanceCache(const AugmentedGraph& g) : g_(g) {}
  int operator()(int a, int b) {
    auto it = rows_.find(a);
    if (it == rows_.end()) it = rows_.emplace(a, bfs_distances(g_, a)).first;
    return it->second[static_cast<std::size_t>(b)];
  }

 private:
  const AugmentedGraph& g_;
  std::unordered_map<int, std::vector<int>> rows_;
};

void require_diamond(const AugmentedGraph& g) {
  if (!verify_diamond(g).ok()) throw Unsupported("geodesic divergence needs a graph passing the diamond conditions");
}

int divergence(const AugmentedGraph& g, int z, DistanceCache& dist) {
  std::vector<int> layer{z};
  int worst = 0;
  // Root-to-z geodesics climb one level per step, so A_{i-1} collects the
  // up-neighbours of A_i.
  while (!layer.empty() && g.level_of(layer.front()) > 0) {
    for (std::size_t a = 0; a < layer.size(); ++a)
      for (std::size_t b = a + 1; b < layer.size(); ++b) worst = std::max(worst, dist(layer[a], layer[b]));
    const int lv = g.level_of(layer.front());
    std::vector<int> up;
    for (int v : layer) {
      for (int p : g.parents(v)) up.push_back(p);
      for (int s : g.slanted(v))
        if (g.level_of(s) == lv - 1) up.push_back(s);
    }
    std::sort(up.begin(), up.end());
    up.erase(std::unique(up.begin(), up.end()), up.end());
    layer = std::move(up);
  }
  return worst;
}

}  // namespace

int diamond_geodesic_divergence(const AugmentedGraph& g, int z) {
  require_diamond(g);
  DistanceCache dist(g);
  return divergence(g, z, dist);
}

std::vector<int> divergence_profile(const AugmentedGraph& g) {
  require_diamond(g);
  DistanceCache dist(g);
  std::vector<int> out(static_cast<std::size_t>(g.depth()) + 1, 0);
  for (int n = 0; n <= g.depth(); ++n)
    for (int z : g.level(n)) out[static_cast<std::size_t>(n)] = std::max(out[static_cast<std::size_t>(n)], divergence(g, z, dist));
  return out;
}

}  // namespace augtree
