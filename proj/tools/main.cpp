#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "augtree/config.hpp"
#include "augtree/error.hpp"
#include "augtree/pipeline.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kBudget = 3, kUnsupported = 4, kInternal = 5 };

struct Overrides {
  std::string config;
  std::string ifs;
  std::string graph;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> depth;
  std::optional<double> kappa;
  std::optional<double> epsilon_net;
  bool quotient = false;
  bool slanted = false;
  std::optional<std::size_t> budget;
  std::optional<std::string> extra_edges;
  std::optional<std::string> builder;

  std::vector<std::string> metrics;
  bool separation = false;
  bool lipschitz = false;
  std::optional<int> iso_depth;
  std::optional<double> a;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> trials;

  std::optional<int> horizon;
  std::optional<std::uint64_t> walks;
  std::optional<std::size_t> pairs;
  std::string format = "json";
};

augtree::RunConfig make_config(const Overrides& o) {
  augtree::RunConfig c;
  if (!o.config.empty()) {
    c = augtree::load_config(o.config);
  } else {
    std::string text = "schema = 1\n";
    if (!o.ifs.empty()) text += "ifs = " + o.ifs + "\n";
    if (!o.graph.empty()) text += "graph = " + o.graph + "\n";
    if (o.builder) text += "builder = " + *o.builder + "\n";
    c = augtree::parse_config(text, std::filesystem::current_path());
  }
  if (!o.config.empty() && (!o.ifs.empty() || !o.graph.empty()))
    throw augtree::ConfigError("--ifs and --graph cannot be combined with --config");
  if (!o.out.empty()) c.out = o.out;
  if (o.seed) c.seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
  if (o.depth) c.depth = *o.depth;
  if (o.kappa) c.kappa = *o.kappa;
  if (o.epsilon_net) c.epsilon_net = *o.epsilon_net;
  if (o.quotient) c.quotient = true;
  if (o.slanted) c.slanted = true;
  if (o.budget) c.budget = *o.budget;
  if (o.extra_edges) c.extra_edges = *o.extra_edges;
  if (o.iso_depth) c.iso_depth = *o.iso_depth;
  if (o.a) c.a = *o.a;
  if (o.samples) c.samples = *o.samples;
  if (o.trials) c.trials = *o.trials;
  if (o.horizon) c.horizon = *o.horizon;
  if (o.walks) c.walks = *o.walks;
  if (o.pairs) c.kernel_pairs = *o.pairs;
  if (c.depth < 1) throw augtree::ConfigError("depth must be at least 1", 0, "depth");
  if (c.kappa && !(*c.kappa > 0.0)) throw augtree::ConfigError("kappa must be positive", 0, "kappa");
  if (c.horizon > c.depth) throw augtree::ConfigError("horizon exceeds depth", 0, "horizon");
  return c;
}

augtree::Artifacts run(const std::string& command, const Overrides& o, const augtree::RunConfig& c) {
  using namespace augtree;
  if (command == "all") return run_all(c);
  if (command == "analyze") {
    const bool chosen = o.separation || o.lipschitz || !o.metrics.empty();
    const Session s(c, o.separation || !chosen);
    if (!chosen) {
      Artifacts out;
      const auto analyses = selected_analyses(c, &s);
      auto has = [&](const char* n) { return std::find(analyses.begin(), analyses.end(), n) != analyses.end(); };
      if (has("metric")) out.merge(metric_artifacts(s, c.metrics, false));
      if (has("separation")) out.merge(separation_artifacts(s));
      if (has("lipschitz")) out.merge(lipschitz_artifacts(s));
      return out;
    }
    Artifacts out;
    if (!o.metrics.empty()) out.merge(metric_artifacts(s, o.metrics, true));
    if (o.separation) out.merge(separation_artifacts(s));
    if (o.lipschitz) out.merge(lipschitz_artifacts(s));
    return out;
  }
  const Session s(c);
  if (command == "build") return build_artifacts(s);
  if (command == "walk") return walk_artifacts(s, true, false);
  if (command == "kernels") return walk_artifacts(s, false, true);
  if (command == "export") {
    const ExportFormat f = o.format == "dot" ? ExportFormat::dot : o.format == "csv" ? ExportFormat::csv : ExportFormat::json;
    return export_artifacts(s, f);
  }
  throw InvalidArgument("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Augmented trees of iterated function systems"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides o;
  app.add_option("--config", o.config, "Run configuration file")->check(CLI::ExistingFile);
  app.add_option("--ifs", o.ifs, "Builtin IFS name or IFS file (without --config)");
  app.add_option("--graph", o.graph, "Import a graph JSON instead of building");
  app.add_option("--builder", o.builder, "ifs, moran or dyadic")->check(CLI::IsMember({"ifs", "moran", "dyadic"}));
  app.add_option("--out", o.out, "Output directory");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--threads", o.threads, "Worker threads (0: all cores)");
  app.add_option("--depth", o.depth, "Tree depth");
  app.add_option("--kappa", o.kappa, "Horizontal edge constant");
  app.add_option("--epsilon-net", o.epsilon_net, "Attractor net resolution");
  app.add_flag("--quotient", o.quotient, "Use the quotient graph");
  app.add_flag("--slanted", o.slanted, "Build slanted instead of horizontal edges");
  app.add_option("--budget", o.budget, "Vertex budget");
  app.add_option("--extra-edges", o.extra_edges, "Extra edge rules: wrap, u:v");

  auto* build = app.add_subcommand("build", "Build the graph and its report");
  auto* analyze = app.add_subcommand("analyze", "Metric, separation and Lipschitz analyses");
  analyze->add_option("--metric", o.metrics, "delta, L, holder or divergence (repeatable)")
      ->check(CLI::IsMember({"delta", "L", "holder", "divergence"}));
  analyze->add_flag("--separation", o.separation, "OSC/WSC degree verdicts");
  analyze->add_flag("--lipschitz", o.lipschitz, "Horizontal component classes");
  analyze->add_option("--iso-depth", o.iso_depth, "Truncation depth for component isomorphism");
  analyze->add_option("--a", o.a, "Visual metric parameter");
  analyze->add_option("--samples", o.samples, "Delta samples for large graphs");
  analyze->add_option("--trials", o.trials, "Ball centres per level (0: all)");
  auto* walk = app.add_subcommand("walk", "Simulate the random walk");
  walk->add_option("--horizon", o.horizon, "Absorbing level");
  walk->add_option("--walks", o.walks, "Number of walks");
  auto* kernels = app.add_subcommand("kernels", "Martin and Naim kernel estimates");
  kernels->add_option("--pairs", o.pairs, "Pairs to sample (0: all)");
  kernels->add_option("--horizon", o.horizon, "Absorbing level");
  auto* exp = app.add_subcommand("export", "Export the graph");
  exp->add_option("--format", o.format, "json, dot or csv")->check(CLI::IsMember({"json", "dot", "csv"}));
  auto* all = app.add_subcommand("all", "Build and run every configured analysis");
  (void)build;
  (void)all;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto config = make_config(o);
    const auto artifacts = run(command, o, config);
    augtree::write_artifacts(artifacts, config.out);
    for (const auto& [name, text] : artifacts.files)
      std::cout << (std::filesystem::path(config.out) / name).string() << "\n";
    return kOk;
  } catch (const augtree::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const augtree::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kConfig;
  } catch (const augtree::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const augtree::Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
