#include "augtree/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "augtree/error.hpp"
#include "augtree/graph_io.hpp"
#include "augtree/lipschitz.hpp"
#include "augtree/metric.hpp"
#include "augtree/randwalk.hpp"
#include "augtree/report_io.hpp"
#include "augtree/separation.hpp"
#include "json_writer.hpp"

namespace augtree {

using nlohmann::json;

void Artifacts::merge(Artifacts other) {
  for (auto& [name, text] : other.files) files[name] = std::move(text);
}

Session::Session(RunConfig config, bool want_quotient) : config_(std::move(config)) {
  const auto& c = config_;
  if (!c.graph.empty()) {
    imported_ = load_graph_json(c.graph);
    return;
  }
  switch (c.builder) {
    case BuilderKind::ifs: {
      const ContractionSpec spec = c.load_spec();
      BuildOptions o;
      o.depth = c.depth;
      o.kappa = c.kappa;
      o.epsilon_net = c.epsilon_net;
      o.quotient = c.quotient || (want_quotient && spec.affine());
      o.slanted = c.slanted;
      o.budget = c.budget;
      o.extra_edges = parse_extra_edges(c.extra_edges);
      o.threads = c.threads;
      ifs_ = build_ifs_tree(spec, o);
      report_ = ifs_->report;
      break;
    }
    case BuilderKind::moran: {
      MoranSpec m;
      m.dim = c.moran_dim;
      m.ratios = c.moran_ratios;
      m.translations = c.moran_translations;
      auto t = build_moran_tree(m, c.depth, c.kappa, c.epsilon_net, c.budget, c.threads);
      other_ = std::move(t.tree);
      report_ = t.report;
      moran_levels_ = std::move(t.original_level);
      break;
    }
    case BuilderKind::dyadic: {
      const ContractionSpec spec = c.load_spec();
      const auto net = RootNet::build(spec, c.epsilon_net);
      other_ = build_dyadic_tree(net->points(), c.depth, c.kappa.value_or(0.1), c.budget);
      break;
    }
    case BuilderKind::imported:
      throw ConfigError("no graph file given", 0, "graph");
  }
}

const AugmentedGraph& Session::graph() const {
  if (imported_) return *imported_;
  if (ifs_) return config_.quotient ? ifs_->quotient->graph : ifs_->raw.graph;
  return other_->graph;
}

const std::vector<CellApprox>* Session::cells() const {
  if (imported_) return nullptr;
  if (ifs_) return config_.quotient ? &ifs_->quotient->cells : &ifs_->raw.cells;
  return &other_->cells;
}

namespace {

json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

json level_sizes(const AugmentedGraph& g) {
  json out = json::array();
  for (int n = 0; n <= g.depth(); ++n) out.push_back(g.level(n).size());
  return out;
}

std::string label(const AugmentedGraph& g, int v) { return v < 0 ? std::string() : g.vertex(v).label(); }

json verdict_json(const AugmentedGraph& g, const SeparationVerdict& v) {
  json witnesses = json::array();
  for (int w : v.witnesses) witnesses.push_back(label(g, w));
  return {{"evidence", to_string(v.evidence)},
          {"slope", v.slope},
          {"depths", v.depths},
          {"max_degree", v.max_degree},
          {"witnesses", witnesses}};
}

json regression_json(const Regression& r) {
  return {{"slope", r.slope},
          {"intercept", r.intercept},
          {"residual_spread", r.residual_spread},
          {"points", r.points},
          {"inconclusive", r.inconclusive}};
}

}  // namespace

Artifacts build_artifacts(const Session& s) {
  const auto& g = s.graph();
  Artifacts out = export_artifacts(s, ExportFormat::json);
  out.merge(export_artifacts(s, ExportFormat::dot));
  out.merge(export_artifacts(s, ExportFormat::csv));

  json b;
  b["builder"] = to_string(g.builder);
  b["depth"] = g.depth();
  b["vertices"] = g.size();
  b["level_sizes"] = level_sizes(g);
  b["quotient"] = g.is_quotient;
  b["equicontractive"] = g.equicontractive;
  b["heuristic"] = g.heuristic;
  b["kappa"] = g.kappa;
  b["base_ratio"] = g.base_ratio;
  b["edges"] = {{"vertical", g.vertical_edge_count()},
                {"horizontal", g.horizontal_edge_count()},
                {"uncertain", g.uncertain_edge_count()},
                {"slanted", g.slanted_edge_count()}};
  if (const auto& r = s.report()) {
    json pre;
    pre["edges_checked"] = r->pre_augmented.edges_checked;
    pre["violations"] = r->pre_augmented.violations.size();
    pre["certified_violations"] = r->pre_augmented.certified_violations.size();
    pre["ok"] = r->pre_augmented.ok();
    b["report"] = {{"kappa", r->kappa},
                   {"epsilon_net", r->epsilon_net},
                   {"root_diameter", interval_json(r->root_diameter)},
                   {"delta0", r->delta0},
                   {"guard_band_words", r->guard_band_words},
                   {"exact_levels", r->exact_levels},
                   {"heuristic_fingerprints", r->heuristic_fingerprints},
                   {"uncertain_edges", r->uncertain_edges},
                   {"uncertain_slanted", r->uncertain_slanted},
                   {"extra_edges", r->extra_edges},
                   {"pre_augmented", pre}};
  }
  // Sibling cells are placed as given; disjoint interiors cannot be decided from nets.
  if (g.builder == BuilderKind::moran) b["interior_disjointness"] = "unchecked";
  if (const auto* t = s.ifs_tree(); t && t->quotient) {
    b["raw_vertices"] = t->raw.graph.size();
    b["quotient_vertices"] = t->quotient->graph.size();
  }
  if (g.slanted_edge_count() > 0) {
    const auto d = verify_diamond(g);
    b["diamond"] = {{"horizontal_edges", d.horizontal_edges},
                    {"two_paths_checked", d.two_paths_checked},
                    {"violations", d.violations.size()},
                    {"ok", d.ok()}};
  }
  out.files["build.json"] = detail::dump_json(b);
  return out;
}

Artifacts export_artifacts(const Session& s, ExportFormat format) {
  Artifacts out;
  switch (format) {
    case ExportFormat::json: out.files["graph.json"] = export_graph_json(s.graph()); break;
    case ExportFormat::dot: out.files["graph.dot"] = export_dot(s.graph()); break;
    case ExportFormat::csv: out.files["degrees.csv"] = export_degree_csv(s.graph()); break;
  }
  return out;
}

Artifacts metric_artifacts(const Session& s, const std::vector<std::string>& metrics, bool strict) {
  const auto& c = s.config();
  const auto& g = s.graph();
  Artifacts out;
  json report;
  const VisualMetricParams params{c.a};
  auto skip = [&](const std::string& what, const std::string& why) {
    if (strict) throw Unsupported(what + ": " + why);
    report["skipped"][what] = why;
  };

  for (const auto& m : metrics) {
    if (m == "delta") {
      // Uncertain edges are included in the main column; the certified
      // column drops them.
      CsvWriter csv({"depth", "delta", "delta_certified", "mode", "vertices", "triples", "seed"});
      DeltaEstimate last;
      for (int d = 1; d <= g.depth(); ++d) {
        const auto t = truncate(g, d);
        last = hyperbolicity_delta(t, c.samples, c.seed, true, c.threads);
        const double certified = t.uncertain_edge_count() == 0
                                     ? last.delta
                                     : hyperbolicity_delta(t, c.samples, c.seed, false, c.threads).delta;
        csv.row({std::to_string(d), format_double(last.delta), format_double(certified),
                 last.mode == DeltaMode::exhaustive ? "exhaustive" : "sampled", std::to_string(last.vertices),
                 std::to_string(last.triples), std::to_string(last.seed)});
      }
      out.files["delta_profile.csv"] = csv.str();
      report["visual_metric"] = {{"a", params.a},
                                 {"beta", params.beta(g.base_ratio)},
                                 {"delta", last.delta},
                                 {"C", std::exp(params.a * last.delta)},
                                 {"admissible", params.admissible(last.delta)}};
    } else if (m == "L") {
      if (g.slanted_edge_count() > 0) {
        skip("L", "horizontal geodesics are undefined with slanted edges");
        continue;
      }
      const auto L = horizontal_geodesic_bound(g, true, c.threads);
      const auto Lc = g.uncertain_edge_count() == 0 ? L : horizontal_geodesic_bound(g, false, c.threads);
      CsvWriter csv({"level", "L", "L_certified", "witness_x", "witness_y"});
      for (int n = 0; n <= g.depth(); ++n) {
        const auto i = static_cast<std::size_t>(n);
        const auto& w = L.witnesses[i];
        csv.row({std::to_string(n), std::to_string(L.per_level[i]), std::to_string(Lc.per_level[i]), label(g, w[0]),
                 label(g, w[1])});
      }
      out.files["L_profile.csv"] = csv.str();
      report["L_max"] = L.max;
      report["L_max_certified"] = Lc.max;
    } else if (m == "holder") {
      if (!s.cells()) {
        skip("holder", "imported graphs carry no cells");
        continue;
      }
      CsvWriter csv({"depth", "min_ratio", "max_ratio", "implied_C", "excluded_pairs", "pairs",
                     "equivalence_violations"});
      for (int d = 1; d <= g.depth(); ++d) {
        const std::size_t sources = g.level(d).size() > c.holder_sources ? c.holder_sources : 0;
        const auto h = holder_distortion(truncate(g, d), *s.cells(), params, sources, c.seed, c.threads);
        csv.row({std::to_string(d), format_double(h.min_ratio), format_double(h.max_ratio),
                 format_double(h.implied_C), std::to_string(h.excluded_pairs), std::to_string(h.pairs),
                 std::to_string(h.equivalence_violations)});
      }
      out.files["holder_ratios.csv"] = csv.str();
    } else if (m == "divergence") {
      if (g.slanted_edge_count() == 0 || !verify_diamond(g).ok()) {
        skip("divergence", "needs a slanted build passing the diamond conditions");
        continue;
      }
      CsvWriter csv({"level", "divergence"});
      const auto prof = divergence_profile(g);
      for (std::size_t n = 0; n < prof.size(); ++n) csv.row({std::to_string(n), std::to_string(prof[n])});
      out.files["divergence.csv"] = csv.str();
    } else {
      throw InvalidArgument("unknown metric '" + m + "'");
    }
  }
  out.files["metric.json"] = detail::dump_json(report);
  return out;
}

Artifacts separation_artifacts(const Session& s) {
  const IfsTree* t = s.ifs_tree();
  if (!t || !t->quotient) throw Unsupported("separation verdicts need an affine IFS build with its quotient");
  const auto& c = s.config();
  const auto verdict = osc_wsc_verdict(*t);
  json v;
  v["depth"] = verdict.depth;
  v["note"] = "evidence at depth " + std::to_string(verdict.depth) + ", not a proof";
  v["osc"] = verdict_json(t->raw.graph, verdict.osc);
  v["wsc"] = verdict_json(t->quotient->graph, verdict.wsc);
  v["osc"]["evidence_certified"] = to_string(degree_growth(degree_profile(t->raw.graph, false)).evidence);
  v["wsc"]["evidence_certified"] = to_string(degree_growth(degree_profile(t->quotient->graph, false)).evidence);
  json pairs = json::array();
  for (const auto& [a, b] : verdict.coincidences.pairs)
    pairs.push_back(json::array({a.empty() ? "o" : a.to_string(), b.empty() ? "o" : b.to_string()}));
  v["coincidences"] = {{"pairs", pairs},
                       {"words_checked", verdict.coincidences.words_checked},
                       {"heuristic", verdict.coincidences.heuristic}};

  const double scale = std::max(1.0, t->root->diameter().hi);
  const auto fps = vertex_fingerprints(t->raw.graph, t->spec, scale);
  const auto balls = ball_intersection_count(t->raw.graph, t->raw.cells, fps, c.ball_c, c.trials, c.seed, c.threads);
  json levels = json::array();
  for (const auto& l : balls.levels)
    levels.push_back({{"level", l.level},
                      {"radius", l.radius},
                      {"balls", l.balls},
                      {"max_raw", l.max_raw},
                      {"max_distinct", l.max_distinct},
                      {"uncertain", l.uncertain}});
  v["balls"] = {{"c", balls.c},
                {"trials", balls.trials},
                {"seed", balls.seed},
                {"max_raw", balls.max_raw},
                {"max_distinct", balls.max_distinct},
                {"levels", levels}};
  Artifacts out;
  out.files["verdicts.json"] = detail::dump_json(v);
  return out;
}

Artifacts lipschitz_artifacts(const Session& s) {
  const auto& c = s.config();
  const auto& g = s.graph();
  if (g.slanted_edge_count() > 0) throw Unsupported("component classes need E_h, not a slanted build");
  const auto report = simplicity_report(g, {c.iso_depth, c.iso_depth + 1}, 2, true, c.threads);
  const auto table = classify_components(g, c.iso_depth, true, c.threads);
  json j;
  j["simple_evidence"] = report.simple_evidence;
  j["note"] = report.note;
  j["iso_depths"] = report.iso_depths;
  j["class_counts"] = report.class_counts;
  j["cumulative_classes"] = report.cumulative;
  j["classes_per_level"] = table.classes_per_level;
  json classes = json::array();
  for (const auto& k : table.classes)
    classes.push_back({{"level", k.level}, {"component", k.component}, {"size", k.size}, {"members", k.members}});
  j["classes"] = classes;
  if (report.incidence)
    j["incidence"] = report.incidence->a;
  else
    j["incidence"] = nullptr;
  if (!report.instability.empty()) j["instability"] = report.instability;
  j["L_max"] = horizontal_geodesic_bound(g, true, c.threads).max;
  Artifacts out;
  out.files["classes.json"] = detail::dump_json(j);
  return out;
}

Artifacts walk_artifacts(const Session& s, bool walk, bool kernels) {
  const auto& c = s.config();
  const auto& g = s.graph();
  const int horizon = c.effective_horizon();
  const TruncatedChain chain(g, horizon);
  const GreenTable green(chain);
  Artifacts out;
  json rep;
  rep["horizon"] = horizon;
  rep["seed"] = c.seed;

  if (walk) {
    const auto hit = simulate_walks(chain, c.walks, c.seed, c.threads);
    const auto exact = absorption_distribution(green);
    const auto freq = hit.frequencies();
    CsvWriter csv({"vertex", "word", "count", "frequency"});
    double tv = 0.0, max_z = 0.0;
    const double n = static_cast<double>(hit.walks - hit.censored);
    for (std::size_t a = 0; a < chain.absorbing().size(); ++a) {
      const int v = chain.absorbing()[a];
      csv.row({std::to_string(v), label(g, v), std::to_string(hit.counts[a]), format_double(freq[a])});
      tv += std::abs(freq[a] - exact[a]);
      const double p = exact[a];
      if (p > 0.0 && p < 1.0 && n > 0) max_z = std::max(max_z, std::abs(freq[a] - p) / std::sqrt(p * (1 - p) / n));
    }
    out.files["hitting.csv"] = csv.str();
    const auto delta = truncation_delta(g, horizon);
    rep["walk"] = {{"walks", hit.walks},
                   {"censored", hit.censored},
                   {"tv_to_exact", 0.5 * tv},
                   {"max_z", max_z},
                   {"within_3_sigma", max_z <= 3.0},
                   {"harmonic_tv", harmonic_tv(chain, freq)},
                   {"harmonic_tv_exact", harmonic_tv(chain, exact)},
                   {"truncation_delta", delta ? json(*delta) : json(nullptr)},
                   {"solver_residual", green.residual()}};
  }
  if (kernels) {
    const auto kr = kernel_scaling(green, c.kernel_pairs, c.seed);
    CsvWriter csv({"pair", "x", "y", "gromov_product", "K", "theta", "predicted"});
    for (const auto& k : kr.samples)
      csv.row({std::to_string(k.x) + "-" + std::to_string(k.y), label(g, k.x), label(g, k.y),
               format_double(0.5 * k.gromov_twice), format_double(k.K), format_double(k.theta),
               format_double(k.predicted)});
    out.files["kernels.csv"] = csv.str();
    rep["kernels"] = {{"branching", kr.branching},
                      {"alpha", kr.alpha},
                      {"pairs", kr.samples.size()},
                      {"martin", regression_json(kr.martin)},
                      {"naim", regression_json(kr.naim)}};
  }
  out.files["report.json"] = detail::dump_json(rep);
  return out;
}

std::vector<std::string> selected_analyses(const RunConfig& config, const Session* s) {
  if (!config.analyses.empty()) return config.analyses;
  std::vector<std::string> out{"metric"};
  const AugmentedGraph* g = s ? &s->graph() : nullptr;
  if (s && s->ifs_tree() && s->ifs_tree()->quotient) out.push_back("separation");
  if (g && g->equicontractive && g->slanted_edge_count() == 0 && g->depth() >= config.iso_depth + 2)
    out.push_back("lipschitz");
  out.push_back("walk");
  if (config.effective_horizon() >= 3) out.push_back("kernels");
  return out;
}

namespace {

bool wants(const std::vector<std::string>& list, const std::string& name) {
  return std::find(list.begin(), list.end(), name) != list.end();
}

}  // namespace

Artifacts run_all(const RunConfig& config) {
  const bool quotient = config.analyses.empty() || wants(config.analyses, "separation");
  const Session s(config, quotient && config.graph.empty() && config.builder == BuilderKind::ifs);
  const auto analyses = selected_analyses(config, &s);
  Artifacts out = build_artifacts(s);
  if (wants(analyses, "metric")) out.merge(metric_artifacts(s, config.metrics, false));
  if (wants(analyses, "separation")) out.merge(separation_artifacts(s));
  if (wants(analyses, "lipschitz")) out.merge(lipschitz_artifacts(s));
  if (wants(analyses, "walk") || wants(analyses, "kernels"))
    out.merge(walk_artifacts(s, wants(analyses, "walk"), wants(analyses, "kernels")));
  return out;
}

void write_artifacts(const Artifacts& artifacts, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create output directory " + dir.string() + ": " + ec.message());
  for (const auto& [name, text] : artifacts.files) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidArgument("cannot write " + (dir / name).string());
    f << text;
    if (!f) throw InvalidArgument("failed writing " + (dir / name).string());
  }
}

}  // namespace augtree
