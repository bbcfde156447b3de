#pragma once

#include <optional>
#include <string>

#include "augtree/library.hpp"
#include "augtree/tree_builder.hpp"

namespace augtree::testing {

inline IfsTree build_builtin(const std::string& name, int depth, std::optional<double> kappa = std::nullopt,
                             bool quotient = false, bool slanted = false) {
  BuildOptions opt;
  opt.depth = depth;
  opt.kappa = kappa;
  opt.quotient = quotient;
  opt.slanted = slanted;
  return build_ifs_tree(builtin_ifs(name), opt);
}

}  // namespace augtree::testing
