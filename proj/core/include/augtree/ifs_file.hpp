#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "augtree/ifs.hpp"

namespace augtree {

/// Reads the sectioned IFS text format:
///
///   dimension = 1
///   [map]
///   ratio = (sqrt(5)-1)/2
///   translation = 0
///   [map]
///   kind = affine
///   linear = 1/2,0;0,1/3
///   translation = 1/2,0
///   min_ratio = 1/3
///   max_ratio = 1/2
///
/// Matrix rows are separated by ';' and entries by ','. Orthogonal parts
/// default to the identity. Errors carry the offending line and key.
ContractionSpec parse_ifs(std::string_view text, std::string name = {});
ContractionSpec load_ifs(const std::filesystem::path& path);

}  // namespace augtree
