#include "augtree/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "augtree/error.hpp"

namespace augtree {

int ColoredGraph::add_vertex(int c) {
  color.push_back(c);
  adj.emplace_back();
  return size() - 1;
}

void ColoredGraph::add_edge(int a, int b, int edge_color) {
  if (a < 0 || b < 0 || a >= size() || b >= size()) throw InvalidArgument("edge endpoint out of range");
  adj[static_cast<std::size_t>(a)].emplace_back(b, edge_color);
  adj[static_cast<std::size_t>(b)].emplace_back(a, edge_color);
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  h *= 0xBF58476D1CE4E5B9ULL;
  return h ^ (h >> 31);
}

// Refines `color` (indexed over the union of both graphs) to a stable partition.
// Colour ids are assigned from sorted signatures, so both halves share a palette.
void refine(const std::vector<const std::vector<std::pair<int, int>>*>& adj, std::vector<int>& color) {
  const std::size_t n = color.size();
  std::size_t classes = 0;
  {
    std::vector<int> c = color;
    std::sort(c.begin(), c.end());
    classes = static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
  }
  using Signature = std::pair<int, std::vector<std::pair<int, int>>>;
  for (;;) {
    std::vector<Signature> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first = color[v];
      for (const auto& [u, t] : *adj[v]) sig[v].second.emplace_back(t, color[static_cast<std::size_t>(u)]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::map<Signature, int> ids;
    for (const auto& s : sig) ids.emplace(s, 0);
    int next = 0;
    for (auto& [s, id] : ids) id = next++;
    for (std::size_t v = 0; v < n; ++v) color[v] = ids[sig[v]];
    if (ids.size() == classes) return;
    classes = ids.size();
  }
}

bool balanced(const std::vector<int>& color, std::size_t na) {
  std::map<int, long> count;
  for (std::size_t v = 0; v < color.size(); ++v) count[color[v]] += v < na ? 1 : -1;
  for (const auto& [c, k] : count)
    if (k != 0) return false;
  return true;
}

bool search(const ColoredGraph& a, const ColoredGraph& b,
            const std::vector<const std::vector<std::pair<int, int>>*>& adj, std::vector<int> color) {
  const auto na = static_cast<std::size_t>(a.size());
  refine(adj, color);
  if (!balanced(color, na)) return false;

  // Smallest colour class with more than one vertex per side.
  std::map<int, std::vector<int>> members;
  for (std::size_t v = 0; v < color.size(); ++v) members[color[v]].push_back(static_cast<int>(v));
  const std::vector<int>* tie = nullptr;
  for (const auto& [c, vs] : members)
    if (vs.size() > 2 && (tie == nullptr || vs.size() < tie->size())) tie = &vs;

  if (tie == nullptr) {
    // Discrete: the colour bijection must preserve every coloured edge.
    std::vector<int> image(na, -1);
    for (const auto& [c, vs] : members) image[static_cast<std::size_t>(vs[0])] = vs[1] - static_cast<int>(na);
    for (std::size_t v = 0; v < na; ++v) {
      std::vector<std::pair<int, int>> ea, eb;
      for (const auto& [u, t] : a.adj[v]) ea.emplace_back(image[static_cast<std::size_t>(u)], t);
      for (const auto& e : b.adj[static_cast<std::size_t>(image[v])]) eb.push_back(e);
      std::sort(ea.begin(), ea.end());
      std::sort(eb.begin(), eb.end());
      if (ea != eb) return false;
    }
    return true;
  }

  const int fresh = static_cast<int>(color.size()) + 1;
  const int u = tie->front();  // lies in a: members are sorted by index
  for (int v : *tie) {
    if (static_cast<std::size_t>(v) < na) continue;
    std::vector<int> next = color;
    next[static_cast<std::size_t>(u)] = fresh;
    next[static_cast<std::size_t>(v)] = fresh;
    if (search(a, b, adj, std::move(next))) return true;
  }
  return false;
}

}  // namespace

std::uint64_t wl_hash(const ColoredGraph& g, int rounds) {
  const auto n = static_cast<std::size_t>(g.size());
  std::vector<std::uint64_t> h(n);
  for (std::size_t v = 0; v < n; ++v) h[v] = mix(0x51ED27ULL, static_cast<std::uint64_t>(g.color[v]));
  for (int r = 0; r < rounds; ++r) {
    std::vector<std::uint64_t> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::uint64_t> around;
      for (const auto& [u, t] : g.adj[v]) around.push_back(mix(static_cast<std::uint64_t>(t), h[static_cast<std::size_t>(u)]));
      std::sort(around.begin(), around.end());
      std::uint64_t x = h[v];
      for (auto a : around) x = mix(x, a);
      next[v] = x;
    }
    h = std::move(next);
  }
  std::sort(h.begin(), h.end());
  std::uint64_t out = mix(0xC0FFEEULL, n);
  for (auto x : h) out = mix(out, x);
  return out;
}

bool isomorphic(const ColoredGraph& a, const ColoredGraph& b) {
  if (a.size() != b.size()) return false;
  std::vector<const std::vector<std::pair<int, int>>*> adj;
  std::vector<int> color;
  const int shift = a.size();
  // The union needs b's neighbour ids shifted past a's vertices.
  std::vector<std::vector<std::pair<int, int>>> shifted(b.adj.size());
  for (std::size_t v = 0; v < b.adj.size(); ++v)
    for (const auto& [u, t] : b.adj[v]) shifted[v].emplace_back(u + shift, t);
  for (std::size_t v = 0; v < a.adj.size(); ++v) {
    adj.push_back(&a.adj[v]);
    color.push_back(a.color[v]);
  }
  for (std::size_t v = 0; v < shifted.size(); ++v) {
    adj.push_back(&shifted[v]);
    color.push_back(b.color[v]);
  }
  return search(a, b, adj, std::move(color));
}

}  // namespace augtree
