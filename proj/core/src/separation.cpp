#include "augtree/separation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "augtree/error.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "spatial_hash.hpp"

namespace augtree {

DegreeProfile degree_profile(const AugmentedGraph& g, bool include_uncertain) {
  DegreeProfile out;
  out.quotient = g.is_quotient;
  out.include_uncertain = include_uncertain;
  double total = 0.0;
  for (int n = 0; n <= g.depth(); ++n) {
    LevelDegrees lv;
    lv.level = n;
    lv.vertices = g.level(n).size();
    double sum = 0.0;
    for (int v : g.level(n)) {
      const int d = g.degree(v, include_uncertain);
      sum += d;
      ++lv.histogram[d];
      ++out.histogram[d];
      if (d > lv.max_degree) {
        lv.max_degree = d;
        lv.witness = v;
      }
      lv.vertical += g.parents(v).size();
      lv.horizontal += static_cast<std::size_t>(g.horizontal_degree(v, include_uncertain));
      for (int s : g.slanted(v))
        if (g.level_of(s) < n) ++lv.slanted;
    }
    lv.horizontal /= 2;
    lv.mean_degree = lv.vertices == 0 ? 0.0 : sum / static_cast<double>(lv.vertices);
    total += sum;
    out.max_degree = std::max(out.max_degree, lv.max_degree);
    out.vertical_edges += lv.vertical;
    out.horizontal_edges += lv.horizontal;
    out.slanted_edges += lv.slanted;
    out.levels.push_back(std::move(lv));
  }
  out.mean_degree = g.size() == 0 ? 0.0 : total / static_cast<double>(g.size());
  return out;
}

CoincidenceReport coincidence_search(const ContractionSpec& spec, int depth, std::size_t budget) {
  if (depth < 0) throw InvalidArgument("coincidence search depth must be non-negative");
  CoincidenceReport out;
  out.heuristic = !spec.exact();
  const std::size_t n = spec.size();
  std::size_t words = 1;
  for (std::size_t level = 1, count = 1; level <= static_cast<std::size_t>(depth); ++level) {
    count *= n;
    words += count;
    if (words > budget) throw BudgetExceeded("coincidence search needs more than " + std::to_string(budget) + " words");
  }

  std::vector<Word> all;
  std::vector<MapFingerprint> keys;
  all.reserve(words);
  keys.reserve(words);
  if (spec.exact()) {
    std::vector<std::pair<Word, ExactAffine>> layer{{Word{}, ExactAffine::identity(spec.dim())}};
    for (int level = 0;; ++level) {
      for (const auto& [w, m] : layer) {
        all.push_back(w);
        keys.push_back(fingerprint(m));
      }
      if (level == depth) break;
      std::vector<std::pair<Word, ExactAffine>> next;
      next.reserve(layer.size() * n);
      for (const auto& [w, m] : layer)
        for (std::size_t i = 0; i < n; ++i)
          next.emplace_back(w.extended(static_cast<Letter>(i)), extend_exact(m, static_cast<Letter>(i), spec));
      layer = std::move(next);
    }
  } else {
    std::vector<std::pair<Word, ComposedMap>> layer{{Word{}, identity_map(spec.dim())}};
    for (int level = 0;; ++level) {
      for (const auto& [w, m] : layer) {
        all.push_back(w);
        keys.push_back(fingerprint(m));
      }
      if (level == depth) break;
      std::vector<std::pair<Word, ComposedMap>> next;
      next.reserve(layer.size() * n);
      for (const auto& [w, m] : layer)
        for (std::size_t i = 0; i < n; ++i)
          next.emplace_back(w.extended(static_cast<Letter>(i)), extend(m, static_cast<Letter>(i), spec));
      layer = std::move(next);
    }
  }
  out.words_checked = all.size();

  std::unordered_map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < keys.size(); ++i) buckets[keys[i].key].push_back(i);
  for (const auto& [key, members] : buckets)
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const Word& x = all[members[a]];
        const Word& y = all[members[b]];
        out.pairs.emplace_back(std::min(x, y), std::max(x, y));
      }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

namespace {

BallHit count_hits(const std::vector<int>& candidates, const std::vector<CellApprox>& cells,
                   const std::vector<MapFingerprint>& fingerprints, const Vec& center, double radius) {
  BallHit hit;
  std::unordered_set<std::string> maps;
  for (int v : candidates) {
    const auto d = decide_point(center, cells[static_cast<std::size_t>(v)], radius);
    if (d == EdgeDecision::absent) continue;
    ++hit.raw;
    if (d == EdgeDecision::uncertain) ++hit.uncertain;
    maps.insert(fingerprints[static_cast<std::size_t>(v)].key);
  }
  hit.distinct = maps.size();
  return hit;
}

void check_inputs(const AugmentedGraph& g, const std::vector<CellApprox>& cells,
                  const std::vector<MapFingerprint>& fingerprints) {
  if (cells.size() < g.size() || fingerprints.size() < g.size())
    throw InvalidArgument("ball counts need a cell and a fingerprint for every vertex");
}

}  // namespace

BallHit ball_cell_count(const AugmentedGraph& g, const std::vector<CellApprox>& cells,
                        const std::vector<MapFingerprint>& fingerprints, int level, const Vec& center, double radius) {
  check_inputs(g, cells, fingerprints);
  if (level < 0 || level > g.depth()) throw InvalidArgument("level out of range");
  return count_hits(g.level(level), cells, fingerprints, center, radius);
}

BallCountReport ball_intersection_count(const AugmentedGraph& g, const std::vector<CellApprox>& cells,
                                        const std::vector<MapFingerprint>& fingerprints, double c,
                                        std::size_t trials, std::uint64_t seed, int threads) {
  if (!(c > 0.0)) throw InvalidArgument("ball constant c must be positive");
  check_inputs(g, cells, fingerprints);
  BallCountReport out;
  out.c = c;
  out.trials = trials;
  out.seed = seed;
  for (int n = 1; n <= g.depth(); ++n) {
    const auto& ids = g.level(n);
    BallCountLevel lv;
    lv.level = n;
    lv.radius = c * std::pow(g.base_ratio, n);
    double reach = 0.0;
    for (int v : ids) {
      const auto& cell = cells[static_cast<std::size_t>(v)];
      reach = std::max(reach, cell.bounding_ball.radius + cell.net_error);
    }
    detail::SpatialHash grid(lv.radius + reach, g.dimension);
    for (int v : ids) grid.insert(cells[static_cast<std::size_t>(v)].bounding_ball.center, v);

    const auto centers = detail::sample_indices(ids.size(), trials == 0 ? ids.size() : trials,
                                                detail::mix_seed(seed, static_cast<std::uint64_t>(n)));
    lv.balls = centers.size();
    const std::size_t chunks = detail::chunk_count(centers.size(), threads);
    std::vector<BallCountLevel> part(chunks);
    detail::parallel_chunks(centers.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t k) {
      std::vector<int> near;
      for (std::size_t i = begin; i < end; ++i) {
        const Vec p = cells[static_cast<std::size_t>(ids[centers[i]])].representative();
        near.clear();
        grid.query(p, [&](int v) { near.push_back(v); });
        const BallHit hit = count_hits(near, cells, fingerprints, p, lv.radius);
        part[k].max_raw = std::max(part[k].max_raw, hit.raw);
        part[k].max_distinct = std::max(part[k].max_distinct, hit.distinct);
        part[k].uncertain += hit.uncertain;
      }
    });
    for (const auto& p : part) {
      lv.max_raw = std::max(lv.max_raw, p.max_raw);
      lv.max_distinct = std::max(lv.max_distinct, p.max_distinct);
      lv.uncertain += p.uncertain;
    }
    out.max_raw = std::max(out.max_raw, lv.max_raw);
    out.max_distinct = std::max(out.max_distinct, lv.max_distinct);
    out.levels.push_back(lv);
  }
  return out;
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::bounded: return "bounded-degree-evidence";
    case Evidence::unbounded: return "unbounded-degree-evidence";
    case Evidence::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

SeparationVerdict degree_growth(const DegreeProfile& profile, GrowthThresholds thresholds) {
  SeparationVerdict out;
  const int deepest = static_cast<int>(profile.levels.size()) - 1;
  int first = (deepest + 1) / 2;
  if (deepest - first < 2) first = 1;
  int running = 0;
  int witness = -1;
  for (int n = 1; n < deepest; ++n) {
    const auto& lv = profile.levels[static_cast<std::size_t>(n)];
    if (lv.max_degree > running) {
      running = lv.max_degree;
      witness = lv.witness;
    }
    if (n < first) continue;
    out.depths.push_back(n);
    out.max_degree.push_back(running);
    out.witnesses.push_back(witness);
  }
  if (out.depths.size() < 2 || running <= 0) return out;

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double k = static_cast<double>(out.depths.size());
  for (std::size_t i = 0; i < out.depths.size(); ++i) {
    const double x = out.depths[i];
    const double y = std::log(static_cast<double>(out.max_degree[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  if (out.slope < thresholds.bounded)
    out.evidence = Evidence::bounded;
  else if (out.slope > thresholds.unbounded)
    out.evidence = Evidence::unbounded;
  return out;
}

OscWscVerdict osc_wsc_verdict(const IfsTree& tree, GrowthThresholds thresholds, int coincidence_depth) {
  if (!tree.quotient) throw InvalidArgument("osc/wsc verdict needs a tree built with the quotient");
  OscWscVerdict out;
  out.depth = tree.raw.graph.depth();
  out.osc = degree_growth(degree_profile(tree.raw.graph), thresholds);
  out.wsc = degree_growth(degree_profile(tree.quotient->graph), thresholds);
  if (tree.spec.affine()) out.coincidences = coincidence_search(tree.spec, coincidence_depth > 0 ? coincidence_depth : std::min(out.depth, 8));
  return out;
}

OscWscVerdict osc_wsc_verdict(const ContractionSpec& spec, int depth, GrowthThresholds thresholds) {
  BuildOptions options;
  options.depth = depth;
  options.quotient = true;
  return osc_wsc_verdict(build_ifs_tree(spec, options), thresholds, 0);
}

}  // namespace augtree
