#include "augtree/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "augtree/error.hpp"
#include "augtree/ifs_file.hpp"
#include "augtree/library.hpp"

namespace augtree {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

template <class T>
T parse_number(const std::string& v, int line, const std::string& key) {
  T x{};
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end) throw ConfigError("not a number: '" + v + "'", line, key);
  return x;
}

double parse_real(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("not a real number: '" + v + "'", line, key);
  }
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("expected true or false", line, key);
}

Scalar scalar(const std::string& v, int line, const std::string& key) {
  try {
    return parse_scalar(v);
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), line, key);
  }
}

}  // namespace

ContractionSpec RunConfig::load_spec() const {
  if (!ifs_text.empty()) return parse_ifs(ifs_text, "inline");
  if (ifs.empty()) throw ConfigError("no IFS given", 0, "ifs");
  const auto names = builtin_names();
  if (std::find(names.begin(), names.end(), ifs) != names.end()) return builtin_ifs(ifs);
  std::filesystem::path p(ifs);
  if (p.is_relative()) p = base_dir / p;
  return load_ifs(p);
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig c;
  c.base_dir = base_dir;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool schema_seen = false;
  bool in_ifs = false;
  std::set<std::string> seen;
  int kappa_line = 0;

  while (std::getline(in, raw)) {
    ++line;
    if (in_ifs) {
      c.ifs_text += raw + "\n";
      continue;
    }
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s == "[ifs]") {
      in_ifs = true;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string v = trim(s.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError("duplicate key", line, key);
    if (v.empty()) throw ConfigError("empty value", line, key);

    if (key == "schema") {
      c.schema = parse_number<int>(v, line, key);
      if (c.schema != kConfigSchemaVersion)
        throw ConfigError("unsupported schema version " + v, line, key);
      schema_seen = true;
    } else if (key == "builder") {
      if (v != "ifs" && v != "moran" && v != "dyadic") throw ConfigError("builder must be ifs, moran or dyadic", line, key);
      c.builder = builder_kind_from_string(v);
    } else if (key == "ifs") {
      c.ifs = v;
    } else if (key == "graph") {
      c.graph = v;
    } else if (key == "depth") {
      c.depth = parse_number<int>(v, line, key);
      if (c.depth < 1) throw ConfigError("depth must be at least 1", line, key);
    } else if (key == "kappa") {
      c.kappa = parse_real(v, line, key);
      kappa_line = line;
    } else if (key == "epsilon_net") {
      c.epsilon_net = parse_real(v, line, key);
      if (c.epsilon_net < 0.0) throw ConfigError("must be non-negative", line, key);
    } else if (key == "quotient") {
      c.quotient = parse_bool(v, line, key);
    } else if (key == "slanted") {
      c.slanted = parse_bool(v, line, key);
    } else if (key == "budget") {
      c.budget = parse_number<std::size_t>(v, line, key);
    } else if (key == "extra_edges") {
      try {
        parse_extra_edges(v);
      } catch (const Error& e) {
        throw ConfigError(e.what(), line, key);
      }
      c.extra_edges = v;
    } else if (key == "moran_dim") {
      c.moran_dim = parse_number<int>(v, line, key);
    } else if (key == "moran_ratios") {
      for (const auto& r : split(v, ',')) c.moran_ratios.push_back(scalar(r, line, key));
    } else if (key == "moran_translations") {
      for (const auto& level : split(v, '|')) {
        std::vector<std::vector<Scalar>> children;
        for (const auto& child : split(level, ';')) {
          std::vector<Scalar> coords;
          for (const auto& x : split(child, ',')) coords.push_back(scalar(x, line, key));
          children.push_back(std::move(coords));
        }
        c.moran_translations.push_back(std::move(children));
      }
    } else if (key == "analyses") {
      static const std::set<std::string> known{"metric", "separation", "lipschitz", "walk", "kernels"};
      for (const auto& a : split(v, ',')) {
        if (!known.count(a)) throw ConfigError("unknown analysis '" + a + "'", line, key);
        c.analyses.push_back(a);
      }
    } else if (key == "metrics") {
      static const std::set<std::string> known{"delta", "L", "holder", "divergence"};
      c.metrics.clear();
      for (const auto& m : split(v, ',')) {
        if (!known.count(m)) throw ConfigError("unknown metric '" + m + "'", line, key);
        c.metrics.push_back(m);
      }
    } else if (key == "a") {
      c.a = parse_real(v, line, key);
      if (!(c.a > 0.0)) throw ConfigError("must be positive", line, key);
    } else if (key == "samples") {
      c.samples = parse_number<std::size_t>(v, line, key);
    } else if (key == "holder_sources") {
      c.holder_sources = parse_number<std::size_t>(v, line, key);
    } else if (key == "trials") {
      c.trials = parse_number<std::size_t>(v, line, key);
    } else if (key == "ball_c") {
      c.ball_c = parse_real(v, line, key);
      if (!(c.ball_c > 0.0)) throw ConfigError("must be positive", line, key);
    } else if (key == "iso_depth") {
      c.iso_depth = parse_number<int>(v, line, key);
      if (c.iso_depth < 1) throw ConfigError("must be at least 1", line, key);
    } else if (key == "horizon") {
      c.horizon = parse_number<int>(v, line, key);
    } else if (key == "walks") {
      c.walks = parse_number<std::uint64_t>(v, line, key);
      if (c.walks == 0) throw ConfigError("must be positive", line, key);
    } else if (key == "kernel_pairs") {
      c.kernel_pairs = parse_number<std::size_t>(v, line, key);
    } else if (key == "seed") {
      c.seed = parse_number<std::uint64_t>(v, line, key);
    } else if (key == "threads") {
      c.threads = parse_number<int>(v, line, key);
    } else if (key == "out") {
      c.out = v;
    } else {
      throw ConfigError("unknown key", line, key);
    }
  }

  if (!schema_seen) throw ConfigError("missing 'schema'", 0, "schema");
  if (c.kappa && !(*c.kappa > 0.0)) throw ConfigError("kappa must be positive", kappa_line, "kappa");
  if (c.horizon > c.depth) throw ConfigError("horizon exceeds depth", 0, "horizon");
  if (c.builder == BuilderKind::moran && c.moran_ratios.empty())
    throw ConfigError("moran builds need moran_ratios", 0, "moran_ratios");
  if (c.graph.empty() && c.builder != BuilderKind::moran && c.ifs.empty() && c.ifs_text.empty())
    throw ConfigError("no IFS given", 0, "ifs");
  if (!c.graph.empty()) {
    std::filesystem::path p(c.graph);
    if (p.is_relative()) p = base_dir / p;
    if (!std::filesystem::exists(p)) throw ConfigError("graph file not found: " + p.string(), 0, "graph");
    c.graph = p.string();
  }
  if (!c.ifs.empty()) {
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), c.ifs) == names.end()) {
      std::filesystem::path p(c.ifs);
      if (p.is_relative()) p = base_dir / p;
      if (!std::filesystem::exists(p)) throw ConfigError("IFS file not found: " + p.string(), 0, "ifs");
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

}  // namespace augtree
