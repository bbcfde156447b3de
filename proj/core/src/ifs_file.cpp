#include "augtree/ifs_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "augtree/error.hpp"

namespace augtree {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<Scalar> parse_list(const std::string& value, int line, const std::string& key) {
  std::vector<Scalar> out;
  std::string item;
  std::istringstream rows(value);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::istringstream cols(row);
    while (std::getline(cols, item, ',')) {
      try {
        out.push_back(parse_scalar(trim(item)));
      } catch (const ConfigError& e) {
        throw ConfigError(e.what(), line, key);
      }
    }
  }
  if (out.empty()) throw ConfigError("empty value", line, key);
  return out;
}

struct MapBlock {
  int line = 0;
  std::map<std::string, std::pair<std::string, int>> fields;
};

Generator build(const MapBlock& b, int dim) {
  auto get = [&](const std::string& key) -> const std::pair<std::string, int>* {
    auto it = b.fields.find(key);
    return it == b.fields.end() ? nullptr : &it->second;
  };
  auto require = [&](const std::string& key) -> const std::pair<std::string, int>& {
    const auto* f = get(key);
    if (!f) throw ConfigError("missing key in [map] block", b.line, key);
    return *f;
  };
  auto scalar = [&](const std::string& key) {
    const auto& [v, line] = require(key);
    auto list = parse_list(v, line, key);
    if (list.size() != 1) throw ConfigError("expected a single number", line, key);
    return list.front();
  };

  std::string kind = "similitude";
  if (const auto* k = get("kind")) kind = k->first;

  const auto& [tv, tline] = require("translation");
  auto translation = parse_list(tv, tline, "translation");
  if (static_cast<int>(translation.size()) != dim)
    throw ConfigError("translation has " + std::to_string(translation.size()) + " entries, expected " +
                          std::to_string(dim), tline, "translation");

  try {
    if (kind == "similitude") {
      for (const char* k : {"linear", "min_ratio", "max_ratio"})
        if (get(k)) throw ConfigError("not allowed for similitudes", get(k)->second, k);
      std::vector<Scalar> orth;
      if (const auto* o = get("orthogonal")) {
        orth = parse_list(o->first, o->second, "orthogonal");
        if (static_cast<int>(orth.size()) != dim * dim)
          throw ConfigError("orthogonal part must have d*d entries", o->second, "orthogonal");
      }
      return make_similitude(scalar("ratio"), orth, translation);
    }
    if (kind == "affine") {
      const auto& [lv, lline] = require("linear");
      auto linear = parse_list(lv, lline, "linear");
      if (static_cast<int>(linear.size()) != dim * dim)
        throw ConfigError("linear part must have d*d entries", lline, "linear");
      return make_affine(linear, translation, scalar("min_ratio").value, scalar("max_ratio").value);
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), b.line, "map");
  }
  throw ConfigError("unknown kind '" + kind + "'", get("kind")->second, "kind");
}

}  // namespace

ContractionSpec parse_ifs(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  int dim = 0;
  int dim_line = 0;
  std::vector<MapBlock> blocks;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line == "[map]") {
      blocks.push_back(MapBlock{line_no, {}});
      continue;
    }
    if (line.front() == '[') throw ConfigError("unknown section " + line, line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError("empty value", line_no, key);

    if (blocks.empty()) {
      if (key == "dimension") {
        try {
          dim = std::stoi(value);
        } catch (const std::exception&) {
          throw ConfigError("not an integer", line_no, key);
        }
        if (dim < 1 || dim > kMaxDim) throw ConfigError("dimension must be in 1..4", line_no, key);
        dim_line = line_no;
      } else if (key == "name") {
        if (name.empty()) name = value;
      } else {
        throw ConfigError("unknown key before first [map]", line_no, key);
      }
      continue;
    }
    static const char* kKeys[] = {"kind", "ratio", "orthogonal", "translation", "linear", "min_ratio", "max_ratio"};
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys))
      throw ConfigError("unknown key in [map] block", line_no, key);
    auto& fields = blocks.back().fields;
    if (fields.count(key)) throw ConfigError("duplicate key", line_no, key);
    fields[key] = {value, line_no};
  }

  if (dim_line == 0) throw ConfigError("missing 'dimension'", 0, "dimension");
  if (blocks.empty()) throw ConfigError("no [map] blocks");
  std::vector<Generator> gens;
  for (const auto& b : blocks) gens.push_back(build(b, dim));
  try {
    return ContractionSpec(dim, std::move(gens), std::move(name));
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

ContractionSpec load_ifs(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open IFS file '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_ifs(ss.str(), path.stem().string());
}

}  // namespace augtree
