#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "augtree/graph.hpp"
#include "augtree/scalar.hpp"
#include "augtree/tree_builder.hpp"

namespace augtree {

inline constexpr int kConfigSchemaVersion = 1;

/// Flat `key = value` run description. An optional trailing `[ifs]` section
/// holds an inline IFS in the IFS file format.
struct RunConfig {
  int schema = kConfigSchemaVersion;
  BuilderKind builder = BuilderKind::ifs;
  std::string ifs;       // builtin name, or a path resolved against the config directory
  std::string ifs_text;  // inline [ifs] section
  std::string graph;     // import a graph JSON instead of building

  int depth = 6;
  std::optional<double> kappa;
  double epsilon_net = 0.0;
  bool quotient = false;
  bool slanted = false;
  std::size_t budget = kDefaultVertexBudget;
  std::string extra_edges = "none";

  // Moran builds: ratios "r1, r2, ..."; translations per level separated by
  // '|', children by ';', coordinates by ','.
  int moran_dim = 1;
  std::vector<Scalar> moran_ratios;
  std::vector<std::vector<std::vector<Scalar>>> moran_translations;

  // Empty selects every analysis that applies to the build.
  std::vector<std::string> analyses;  // metric, separation, lipschitz, walk, kernels
  std::vector<std::string> metrics{"delta", "L", "holder", "divergence"};
  double a = 0.2;
  std::size_t samples = 400;          // delta samples once a graph exceeds the exhaustive limit
  std::size_t holder_sources = 2000;  // cap on deepest-level sources
  std::size_t trials = 0;             // ball-count centres per level, 0 = every cell
  double ball_c = 1.0;
  int iso_depth = 2;

  int horizon = 0;  // 0: min(depth, 6)
  std::uint64_t walks = 100000;
  std::size_t kernel_pairs = 2000;

  std::uint64_t seed = 1;
  int threads = 1;
  std::string out = "out";
  std::filesystem::path base_dir;

  int effective_horizon() const { return horizon > 0 ? horizon : std::min(depth, 6); }
  /// The IFS this config names, parsed.
  ContractionSpec load_spec() const;
};

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace augtree
