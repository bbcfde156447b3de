#include "augtree/library.hpp"

#include <map>

#include "augtree/error.hpp"
#include "augtree/ifs_file.hpp"

namespace augtree {

namespace {

const std::map<std::string, std::string>& table() {
  static const std::map<std::string, std::string> t = {
      {"cantor",
       "dimension = 1\n"
       "[map]\nratio = 1/3\ntranslation = 0\n"
       "[map]\nratio = 1/3\ntranslation = 2/3\n"},
      {"unit_interval",
       "dimension = 1\n"
       "[map]\nratio = 1/2\ntranslation = 0\n"
       "[map]\nratio = 1/2\ntranslation = 1/2\n"},
      {"sierpinski",
       "dimension = 2\n"
       "[map]\nratio = 1/2\ntranslation = 0, 0\n"
       "[map]\nratio = 1/2\ntranslation = 1/2, 0\n"
       "[map]\nratio = 1/2\ntranslation = 1/4, sqrt(3)/4\n"},
      // S_0 S_1 S_1 = S_1 S_0 S_0 since r^2 + r = 1.
      {"golden",
       "dimension = 1\n"
       "[map]\nratio = (sqrt(5)-1)/2\ntranslation = 0\n"
       "[map]\nratio = (sqrt(5)-1)/2\ntranslation = (3-sqrt(5))/2\n"},
      {"touching_cantor",
       "dimension = 1\n"
       "[map]\nratio = 1/4\ntranslation = 0\n"
       "[map]\nratio = 1/4\ntranslation = 1/4\n"
       "[map]\nratio = 1/4\ntranslation = 3/4\n"},
      // x/2 + t with t = sqrt(2) - 1 irrational against the dyadic grid:
      // overlapping cells whose distinct maps pile up.
      {"overlap",
       "dimension = 1\n"
       "[map]\nratio = 0.5\ntranslation = 0\n"
       "[map]\nratio = 0.5\ntranslation = 0.41421356237309503\n"
       "[map]\nratio = 0.5\ntranslation = 0.5\n"},
  };
  return t;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : table()) out.push_back(name);
  return out;
}

const std::string& builtin_text(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end()) throw InvalidArgument("unknown builtin IFS '" + name + "'");
  return it->second;
}

ContractionSpec builtin_ifs(const std::string& name) { return parse_ifs(builtin_text(name), name); }

}  // namespace augtree
