#include "augtree/lipschitz.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "augtree/error.hpp"
#include "parallel.hpp"

namespace augtree {

namespace {

int find(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

std::vector<HorizontalComponent> components(const AugmentedGraph& g, int level, bool include_uncertain) {
  if (!g.equicontractive) throw Unsupported("horizontal component classes need an equicontractive graph");
  if (level < 0 || level > g.depth()) throw InvalidArgument("level out of range");
  const auto& ids = g.level(level);
  std::unordered_map<int, int> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], static_cast<int>(i));
  std::vector<int> parent(ids.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (const auto& e : g.horizontal(ids[i])) {
      if (!include_uncertain && e.status != EdgeStatus::certified) continue;
      const int a = find(parent, static_cast<int>(i));
      const int b = find(parent, index.at(e.to));
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < ids.size(); ++i) groups[find(parent, static_cast<int>(i))].push_back(ids[i]);
  std::vector<HorizontalComponent> out;
  for (auto& [root, vs] : groups) {
    std::sort(vs.begin(), vs.end());
    out.push_back({level, 0, std::move(vs)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.vertices.front() < b.vertices.front(); });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
  return out;
}

ColoredGraph descendant_graph(const AugmentedGraph& g, const HorizontalComponent& c, int m, bool include_uncertain) {
  ColoredGraph out;
  std::unordered_map<int, int> local;
  std::vector<int> layer = c.vertices;
  for (int k = 0; k <= m && !layer.empty(); ++k) {
    for (int v : layer) local.emplace(v, out.add_vertex(k));
    for (int v : layer) {
      for (int p : g.parents(v)) {
        auto it = local.find(p);
        if (k > 0 && it != local.end()) out.add_edge(it->second, local.at(v), 0);
      }
      for (const auto& e : g.horizontal(v)) {
        if (e.to < v || (!include_uncertain && e.status != EdgeStatus::certified)) continue;
        auto it = local.find(e.to);
        if (it != local.end()) out.add_edge(local.at(v), it->second, 1);
      }
    }
    if (k == m) break;
    std::vector<int> next;
    for (int v : layer)
      for (int ch : g.children(v)) next.push_back(ch);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layer = std::move(next);
  }
  return out;
}

ComponentClassTable classify_components(const AugmentedGraph& g, int m, bool include_uncertain, int threads) {
  if (m < 1) throw InvalidArgument("isomorphism depth must be at least 1");
  if (g.depth() < m + 1) throw InvalidArgument("graph depth " + std::to_string(g.depth()) +
                                               " is too shallow for isomorphism depth " + std::to_string(m));
  ComponentClassTable table;
  table.iso_depth = m;
  table.levels = g.depth() - m + 1;
  std::vector<ColoredGraph> reps;
  std::unordered_map<std::uint64_t, std::vector<int>> buckets;

  for (int n = 0; n < table.levels; ++n) {
    auto comps = components(g, n, include_uncertain);
    std::vector<ColoredGraph> graphs(comps.size());
    std::vector<std::uint64_t> hashes(comps.size());
    detail::parallel_chunks(comps.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
      for (std::size_t i = begin; i < end; ++i) {
        graphs[i] = descendant_graph(g, comps[i], m, include_uncertain);
        hashes[i] = wl_hash(graphs[i]);
      }
    });
    std::vector<int> assign(comps.size(), -1);
    std::vector<char> seen_here;
    std::size_t here = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      auto& bucket = buckets[hashes[i]];
      int cls = -1;
      for (int c : bucket)
        if (isomorphic(reps[static_cast<std::size_t>(c)], graphs[i])) {
          cls = c;
          break;
        }
      if (cls < 0) {
        cls = static_cast<int>(table.classes.size());
        table.classes.push_back({n, static_cast<int>(i), comps[i].vertices.size(), 0});
        reps.push_back(graphs[i]);
        bucket.push_back(cls);
      }
      ++table.classes[static_cast<std::size_t>(cls)].members;
      assign[i] = cls;
      if (seen_here.size() < table.classes.size()) seen_here.resize(table.classes.size(), 0);
      if (!seen_here[static_cast<std::size_t>(cls)]) {
        seen_here[static_cast<std::size_t>(cls)] = 1;
        ++here;
      }
    }
    table.classes_per_level.push_back(here);
    table.cumulative_classes.push_back(table.classes.size());
    table.per_level.push_back(std::move(comps));
    table.assignment.push_back(std::move(assign));
  }
  return table;
}

namespace {

std::vector<std::int64_t> offspring_row(const ComponentClassTable& table, const AugmentedGraph& g, int level,
                                        int component, const std::unordered_map<int, int>& next_component) {
  std::vector<std::int64_t> row(table.classes.size(), 0);
  std::vector<int> kids;
  for (int v : table.per_level[static_cast<std::size_t>(level)][static_cast<std::size_t>(component)].vertices)
    for (int ch : g.children(v)) kids.push_back(next_component.at(ch));
  std::sort(kids.begin(), kids.end());
  kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
  for (int k : kids)
    ++row[static_cast<std::size_t>(table.assignment[static_cast<std::size_t>(level) + 1][static_cast<std::size_t>(k)])];
  return row;
}

}  // namespace

IncidenceMatrix incidence_matrix(const ComponentClassTable& table, const AugmentedGraph& g) {
  const std::size_t k = table.classes.size();
  std::vector<std::vector<std::array<int, 2>>> members(k);
  for (int n = 0; n + 1 < table.levels; ++n)
    for (std::size_t i = 0; i < table.assignment[static_cast<std::size_t>(n)].size(); ++i) {
      auto& list = members[static_cast<std::size_t>(table.assignment[static_cast<std::size_t>(n)][i])];
      if (list.size() < 2) list.push_back({n, static_cast<int>(i)});
    }

  std::vector<std::unordered_map<int, int>> comp_of(static_cast<std::size_t>(table.levels));
  for (int n = 0; n < table.levels; ++n)
    for (const auto& c : table.per_level[static_cast<std::size_t>(n)])
      for (int v : c.vertices) comp_of[static_cast<std::size_t>(n)].emplace(v, c.id);

  IncidenceMatrix out;
  for (std::size_t i = 0; i < k; ++i) {
    if (members[i].empty())
      throw ClassificationUnstable("class " + std::to_string(i) +
                                   " only occurs on the last classified level; its offspring are unclassified");
    const auto [n, c] = members[i][0];
    out.a.push_back(offspring_row(table, g, n, c, comp_of[static_cast<std::size_t>(n) + 1]));
    if (members[i].size() > 1) {
      const auto [n2, c2] = members[i][1];
      if (offspring_row(table, g, n2, c2, comp_of[static_cast<std::size_t>(n2) + 1]) != out.a.back())
        throw ClassificationUnstable("class " + std::to_string(i) +
                                     " has representatives with different offspring; raise the isomorphism depth");
      out.checked.push_back({n2, c2});
    } else {
      out.checked.push_back({-1, -1});
    }
  }
  return out;
}

SimplicityReport simplicity_report(const AugmentedGraph& g, const std::vector<int>& iso_depths, int window,
                                   bool include_uncertain, int threads) {
  if (iso_depths.empty()) throw InvalidArgument("simplicity report needs at least one isomorphism depth");
  if (window < 1) throw InvalidArgument("stability window must be positive");
  SimplicityReport out;
  out.note = "simple evidence implies uniformly bounded horizontal geodesics; compare with the L profile";
  bool stable = true;
  std::optional<ComponentClassTable> first;
  for (int m : iso_depths) {
    auto table = classify_components(g, m, include_uncertain, threads);
    const auto& cum = table.cumulative_classes;
    if (static_cast<int>(cum.size()) <= window || cum.back() != cum[cum.size() - 1 - static_cast<std::size_t>(window)])
      stable = false;
    if (!out.class_counts.empty() && out.class_counts.front() != table.classes.size()) stable = false;
    out.iso_depths.push_back(m);
    out.class_counts.push_back(table.classes.size());
    out.cumulative.push_back(cum);
    if (!first) first = std::move(table);
  }
  try {
    out.incidence = incidence_matrix(*first, g);
  } catch (const ClassificationUnstable& e) {
    out.instability = e.what();
    stable = false;
  }
  out.simple_evidence = stable;
  return out;
}

}  // namespace augtree
