#include <algorithm>
#include <cmath>

#include "augtree/error.hpp"
#include "augtree/tree_builder.hpp"
#include "parallel.hpp"
#include "spatial_hash.hpp"

namespace augtree {
namespace {

std::vector<int> up_neighbors(const AugmentedGraph& g, int y) {
  std::vector<int> out = g.parents(y);
  for (int s : g.slanted(y))
    if (g.level_of(s) == g.level_of(y) - 1) out.push_back(s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::size_t build_slanted_edges(AugmentedGraph& graph, const std::vector<CellApprox>& cells, double kappa, int threads) {
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  if (cells.size() != graph.size()) throw InvalidArgument("one cell per vertex is required");
  graph.kappa = kappa;
  std::size_t uncertain = 0;

  for (int n = 0; n < graph.depth(); ++n) {
    const auto& upper = graph.level(n);
    const auto& lower = graph.level(n + 1);
    const double t = kappa * std::pow(graph.base_ratio, n);
    double reach = t;
    double ru = 0.0;
    double rl = 0.0;
    for (int v : upper) {
      const auto& c = cells[static_cast<std::size_t>(v)];
      ru = std::max(ru, c.bounding_ball.radius + c.net_error);
    }
    for (int v : lower) {
      const auto& c = cells[static_cast<std::size_t>(v)];
      rl = std::max(rl, c.bounding_ball.radius + c.net_error);
    }
    reach += ru + rl;
    detail::SpatialHash grid(reach, graph.dimension);
    for (std::size_t i = 0; i < upper.size(); ++i)
      grid.insert(cells[static_cast<std::size_t>(upper[i])].bounding_ball.center, static_cast<int>(i));

    struct Found {
      int x;
      int y;
      bool certified;
    };
    const std::size_t chunks = detail::chunk_count(lower.size(), threads);
    std::vector<std::vector<Found>> found(chunks);
    detail::parallel_chunks(lower.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
      std::vector<int> near;
      for (std::size_t i = begin; i < end; ++i) {
        const int y = lower[i];
        const auto& cy = cells[static_cast<std::size_t>(y)];
        near.clear();
        grid.query(cy.bounding_ball.center, [&](int j) { near.push_back(upper[static_cast<std::size_t>(j)]); });
        std::sort(near.begin(), near.end());
        const auto& ps = graph.parents(y);
        for (int x : near) {
          if (std::find(ps.begin(), ps.end(), x) != ps.end()) continue;
          const auto d = decide_edge(cells[static_cast<std::size_t>(x)], cy, t);
          if (d != EdgeDecision::absent) found[chunk].push_back({x, y, d == EdgeDecision::certified});
        }
      }
    });
    for (const auto& chunk : found)
      for (const auto& f : chunk) {
        graph.add_slanted(f.x, f.y);
        if (!f.certified) ++uncertain;
      }
  }
  return uncertain;
}

DiamondReport verify_diamond(const AugmentedGraph& graph) {
  DiamondReport report;
  report.horizontal_edges = graph.horizontal_edge_count(true);
  std::vector<std::vector<int>> ups(graph.size());
  for (std::size_t v = 0; v < graph.size(); ++v) ups[v] = up_neighbors(graph, static_cast<int>(v));

  for (std::size_t y = 0; y < graph.size(); ++y) {
    const auto& u = ups[y];
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j) {
        ++report.two_paths_checked;
        const auto& ax = ups[static_cast<std::size_t>(u[i])];
        const auto& az = ups[static_cast<std::size_t>(u[j])];
        std::vector<int> common;
        std::set_intersection(ax.begin(), ax.end(), az.begin(), az.end(), std::back_inserter(common));
        if (common.empty()) report.violations.push_back({u[i], static_cast<int>(y), u[j]});
      }
  }
  return report;
}

}  // namespace augtree
