#include "augtree/tree_builder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "augtree/error.hpp"
#include "parallel.hpp"
#include "spatial_hash.hpp"

namespace augtree {
namespace {

struct Found {
  int a;
  int b;
  EdgeDecision decision;
};

double level_threshold(const AugmentedGraph& g, double kappa, int n) { return kappa * std::pow(g.base_ratio, n); }

bool parents_linked(const AugmentedGraph& g, int x, int y, bool include_uncertain) {
  for (int p : g.parents(x))
    for (int q : g.parents(y))
      if (p == q || g.has_horizontal(p, q, include_uncertain)) return true;
  return false;
}

}  // namespace

HorizontalBuildStats build_horizontal_edges(AugmentedGraph& graph, const std::vector<CellApprox>& cells, double kappa,
                                            int threads) {
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  if (cells.size() != graph.size()) throw InvalidArgument("one cell per vertex is required");
  graph.kappa = kappa;
  HorizontalBuildStats stats;

  for (int n = 1; n <= graph.depth(); ++n) {
    const auto& ids = graph.level(n);
    const double t = level_threshold(graph, kappa, n);
    double max_radius = 0.0;
    double max_error = 0.0;
    for (int v : ids) {
      max_radius = std::max(max_radius, cells[static_cast<std::size_t>(v)].bounding_ball.radius);
      max_error = std::max(max_error, cells[static_cast<std::size_t>(v)].net_error);
    }
    detail::SpatialHash grid(2.0 * max_radius + t + 2.0 * max_error, graph.dimension);
    for (std::size_t i = 0; i < ids.size(); ++i)
      grid.insert(cells[static_cast<std::size_t>(ids[i])].bounding_ball.center, static_cast<int>(i));

    const std::size_t chunks = detail::chunk_count(ids.size(), threads);
    std::vector<std::vector<Found>> found(chunks);
    std::vector<std::size_t> candidates(chunks, 0);
    detail::parallel_chunks(ids.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
      std::vector<int> near;
      for (std::size_t i = begin; i < end; ++i) {
        const auto& ci = cells[static_cast<std::size_t>(ids[i])];
        near.clear();
        grid.query(ci.bounding_ball.center, [&](int j) {
          if (static_cast<std::size_t>(j) > i) near.push_back(j);
        });
        std::sort(near.begin(), near.end());
        for (int j : near) {
          ++candidates[chunk];
          const int a = ids[i];
          const int b = ids[static_cast<std::size_t>(j)];
          const auto d = decide_edge(ci, cells[static_cast<std::size_t>(b)], t);
          if (d != EdgeDecision::absent) found[chunk].push_back({a, b, d});
        }
      }
    });
    for (std::size_t c = 0; c < chunks; ++c) {
      stats.candidate_pairs += candidates[c];
      for (const auto& f : found[c]) {
        const bool certified = f.decision == EdgeDecision::certified;
        graph.add_horizontal(f.a, f.b, certified ? EdgeStatus::certified : EdgeStatus::uncertain);
        ++(certified ? stats.certified : stats.uncertain);
      }
    }
  }
  return stats;
}

PreAugmentedReport verify_pre_augmented(const AugmentedGraph& graph) {
  PreAugmentedReport report;
  for (std::size_t xv = 0; xv < graph.size(); ++xv) {
    const int x = static_cast<int>(xv);
    for (const auto& e : graph.horizontal(x)) {
      if (e.to < x) continue;
      ++report.edges_checked;
      if (graph.level_of(x) != graph.level_of(e.to) || !parents_linked(graph, x, e.to, true))
        report.violations.emplace_back(x, e.to);
      if (e.status == EdgeStatus::certified && !parents_linked(graph, x, e.to, false))
        report.certified_violations.emplace_back(x, e.to);
    }
  }
  return report;
}

std::vector<MapFingerprint> vertex_fingerprints(const AugmentedGraph& graph, const ContractionSpec& spec, double scale) {
  std::vector<MapFingerprint> out(graph.size());
  if (spec.exact()) {
    std::vector<ExactAffine> maps(graph.size());
    for (std::size_t v = 0; v < graph.size(); ++v) {
      const int id = static_cast<int>(v);
      const Word& w = graph.vertex(id).words.front();
      if (graph.parents(id).empty()) {
        maps[v] = compose_exact(w, spec);
      } else {
        const int p = graph.parents(id).front();
        const Word& pw = graph.vertex(p).words.front();
        ExactAffine m = maps[static_cast<std::size_t>(p)];
        for (std::size_t k = pw.size(); k < w.size(); ++k) m = extend_exact(m, w[k], spec);
        maps[v] = std::move(m);
      }
      out[v] = fingerprint(maps[v]);
    }
    return out;
  }
  for (std::size_t v = 0; v < graph.size(); ++v)
    out[v] = fingerprint(compose(graph.vertex(static_cast<int>(v)).words.front(), spec), scale);
  return out;
}

std::vector<ExtraEdgeRule> parse_extra_edges(const std::string& text) {
  std::vector<ExtraEdgeRule> rules;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty() || item == "none") continue;
    if (item == "wrap") {
      rules.push_back({ExtraEdgeRule::Kind::wrap, {}, {}});
      continue;
    }
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidArgument("extra edge '" + item + "' is neither 'wrap' nor 'u:v'");
    rules.push_back({ExtraEdgeRule::Kind::pair, Word::parse(item.substr(0, colon)), Word::parse(item.substr(colon + 1))});
  }
  return rules;
}

std::size_t apply_extra_edges(AugmentedGraph& graph, const std::vector<ExtraEdgeRule>& rules) {
  std::size_t added = 0;
  auto join = [&](int a, int b) {
    if (a == b || graph.has_horizontal(a, b, false)) return;
    graph.add_horizontal(a, b, EdgeStatus::certified);
    ++added;
  };
  for (const auto& rule : rules) {
    if (rule.kind == ExtraEdgeRule::Kind::pair) {
      const auto a = graph.find_word(rule.a);
      const auto b = graph.find_word(rule.b);
      if (!a || !b) throw InvalidArgument("extra edge endpoint not in graph: " + rule.a.to_string() + ":" + rule.b.to_string());
      if (graph.level_of(*a) != graph.level_of(*b)) throw InvalidArgument("extra edge endpoints lie on different levels");
      join(*a, *b);
      continue;
    }
    const Letter last = static_cast<Letter>(graph.alphabet - 1);
    for (int n = 1; n <= graph.depth(); ++n) {
      int lo = -1;
      int hi = -1;
      for (int v : graph.level(n)) {
        for (const auto& w : graph.vertex(v).words) {
          const auto letters = w.letters();
          if (std::all_of(letters.begin(), letters.end(), [](Letter l) { return l == 0; })) lo = v;
          if (std::all_of(letters.begin(), letters.end(), [&](Letter l) { return l == last; })) hi = v;
        }
      }
      if (lo >= 0 && hi >= 0) join(lo, hi);
    }
  }
  return added;
}

double a2_constant(const AugmentedGraph& graph, const std::vector<CellApprox>& cells) {
  double delta0 = 1.0;
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const double rn = std::pow(graph.base_ratio, graph.level_of(static_cast<int>(v)));
    const auto& d = cells[v].diameter;
    if (d.hi > 0.0) delta0 = std::max(delta0, d.hi / rn);
    if (d.lo > 0.0) delta0 = std::max(delta0, rn / d.lo);
  }
  return delta0;
}

IfsTree build_ifs_tree(const ContractionSpec& spec, const BuildOptions& options) {
  if (options.depth < 0) throw InvalidArgument("depth must be >= 0");
  if (options.kappa && !(*options.kappa > 0.0)) throw InvalidArgument("kappa must be positive");

  IfsTree tree;
  tree.spec = spec;
  LevelSets levels = build_levels(spec, options.depth, options.budget);
  AugmentedGraph graph = build_vertical_edges(levels);
  graph.base_ratio = spec.min_ratio();
  graph.equicontractive = spec.equicontractive();
  graph.alphabet = static_cast<int>(spec.size());
  graph.dimension = spec.dim();
  graph.builder = BuilderKind::ifs;
  graph.heuristic = !levels.guard_band.empty();
  tree.report.guard_band_words = levels.guard_band.size();
  tree.report.exact_levels = levels.exact;

  tree.root = RootNet::build(spec, options.epsilon_net);
  const double diam = tree.root->diameter().lo;
  const double kappa = options.kappa ? *options.kappa : (diam > 0.0 ? 0.1 * diam : 0.1);
  graph.kappa = kappa;
  tree.report.kappa = kappa;
  tree.report.epsilon_net = tree.root->epsilon();
  tree.report.root_diameter = tree.root->diameter();

  std::vector<CellApprox> cells(graph.size());
  {
    std::vector<ComposedMap> maps(graph.size());
    for (std::size_t v = 0; v < graph.size(); ++v) {
      const int id = static_cast<int>(v);
      const Word& w = graph.vertex(id).words.front();
      if (graph.parents(id).empty()) {
        maps[v] = compose(w, spec);
      } else {
        const int p = graph.parents(id).front();
        ComposedMap m = maps[static_cast<std::size_t>(p)];
        for (std::size_t k = graph.vertex(p).words.front().size(); k < w.size(); ++k) m = extend(m, w[k], spec);
        maps[v] = std::move(m);
      }
      cells[v] = build_cell(maps[v], tree.root);
    }
  }

  if (options.slanted) {
    tree.report.uncertain_slanted = build_slanted_edges(graph, cells, kappa, options.threads);
  } else {
    const auto stats = build_horizontal_edges(graph, cells, kappa, options.threads);
    tree.report.uncertain_edges = stats.uncertain;
  }
  tree.report.extra_edges = apply_extra_edges(graph, options.extra_edges);
  if (!options.slanted) tree.report.pre_augmented = verify_pre_augmented(graph);
  tree.report.delta0 = a2_constant(graph, cells);
  graph.validate();

  if (options.quotient) {
    const double scale = std::max(1.0, tree.root->diameter().hi);
    const auto fps = vertex_fingerprints(graph, spec, scale);
    tree.report.heuristic_fingerprints = !spec.exact();
    QuotientResult q = build_quotient(graph, fps);
    GeometricGraph quotient;
    quotient.graph = std::move(q.graph);
    for (int rep : q.representatives) quotient.cells.push_back(cells[static_cast<std::size_t>(rep)]);
    tree.quotient = std::move(quotient);
    tree.quotient_class = std::move(q.class_of);
  }
  tree.raw = {std::move(graph), std::move(cells)};
  return tree;
}

}  // namespace augtree
