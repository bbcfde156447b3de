#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "augtree/config.hpp"
#include "augtree/tree_builder.hpp"

namespace augtree {

/// Output files by name. Everything is computed before anything is written,
/// so a failing run leaves no partial output.
struct Artifacts {
  std::map<std::string, std::string> files;
  void merge(Artifacts other);
};

/// A built (or imported) graph plus whatever geometry came with it.
class Session {
 public:
  /// `want_quotient` forces the quotient even when the config does not ask
  /// for it as the primary graph; the separation verdicts need it.
  explicit Session(RunConfig config, bool want_quotient = false);

  const RunConfig& config() const { return config_; }
  const AugmentedGraph& graph() const;
  /// Cells by vertex id; null for imported graphs.
  const std::vector<CellApprox>* cells() const;
  /// Set for IFS builds.
  const IfsTree* ifs_tree() const { return ifs_ ? &*ifs_ : nullptr; }
  const std::optional<BuildReport>& report() const { return report_; }

 private:
  RunConfig config_;
  std::optional<IfsTree> ifs_;
  std::optional<GeometricGraph> other_;
  std::optional<AugmentedGraph> imported_;
  std::optional<BuildReport> report_;
  std::vector<int> moran_levels_;
};

enum class ExportFormat { json, dot, csv };

Artifacts build_artifacts(const Session& s);
Artifacts export_artifacts(const Session& s, ExportFormat format);
/// With strict set, a requested metric that does not apply raises Unsupported
/// instead of being skipped.
Artifacts metric_artifacts(const Session& s, const std::vector<std::string>& metrics, bool strict);
Artifacts separation_artifacts(const Session& s);
Artifacts lipschitz_artifacts(const Session& s);
Artifacts walk_artifacts(const Session& s, bool walk, bool kernels);

/// Analyses `all` runs: the configured list, or every one that applies.
std::vector<std::string> selected_analyses(const RunConfig& config, const Session* s = nullptr);

Artifacts run_all(const RunConfig& config);

/// Creates `dir` and writes every file; throws InvalidArgument when the
/// directory cannot be written.
void write_artifacts(const Artifacts& artifacts, const std::filesystem::path& dir);

}  // namespace augtree
