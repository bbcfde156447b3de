#pragma once

#include <string>
#include <vector>

#include "augtree/ifs.hpp"

namespace augtree {

/// Bundled systems: cantor, unit_interval, sierpinski, golden,
/// touching_cantor, overlap (floating-point).
std::vector<std::string> builtin_names();
/// Their IFS text; throws InvalidArgument for unknown names.
const std::string& builtin_text(const std::string& name);
ContractionSpec builtin_ifs(const std::string& name);

}  // namespace augtree
