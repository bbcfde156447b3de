#pragma once

#include <string>

#include "augtree/graph.hpp"

namespace augtree {

inline constexpr int kGraphSchemaVersion = 1;

/// Vertices with level and words, sorted ev/eh/es edge lists with statuses.
std::string export_graph_json(const AugmentedGraph& g);
/// Inverse of export_graph_json; throws InvalidArgument on malformed input.
AugmentedGraph import_graph_json(const std::string& text);
AugmentedGraph load_graph_json(const std::string& path);

/// Levels as ranks; E_v solid, E_h dashed (uncertain ones grey), E_s dotted.
std::string export_dot(const AugmentedGraph& g);

/// One row per vertex: id, level, label, degree and its E_v/E_h/E_s parts.
std::string export_degree_csv(const AugmentedGraph& g);

}  // namespace augtree
