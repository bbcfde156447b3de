#include "augtree/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <tuple>

#include "augtree/error.hpp"
#include "augtree/report_io.hpp"
#include "json_writer.hpp"

namespace augtree {

namespace {

using nlohmann::json;

struct EdgeLists {
  std::vector<std::pair<int, int>> ev;  // (parent, child)
  std::vector<std::tuple<int, int, EdgeStatus>> eh;
  std::vector<std::pair<int, int>> es;  // (upper, lower)
};

EdgeLists edge_lists(const AugmentedGraph& g) {
  EdgeLists out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int v = static_cast<int>(i);
    for (int p : g.parents(v)) out.ev.emplace_back(p, v);
    for (const auto& e : g.horizontal(v))
      if (v < e.to) out.eh.emplace_back(v, e.to, e.status);
    for (int s : g.slanted(v))
      if (g.level_of(s) < g.level_of(v)) out.es.emplace_back(s, v);
  }
  std::sort(out.ev.begin(), out.ev.end(), [](const auto& a, const auto& b) {
    return std::tie(a.second, a.first) < std::tie(b.second, b.first);
  });
  std::sort(out.eh.begin(), out.eh.end());
  std::sort(out.es.begin(), out.es.end());
  return out;
}

std::string status_name(EdgeStatus s) { return s == EdgeStatus::certified ? "certified" : "uncertain"; }

}  // namespace

std::string export_graph_json(const AugmentedGraph& g) {
  json j;
  j["schema"] = "augtree-graph";
  j["version"] = kGraphSchemaVersion;
  j["builder"] = to_string(g.builder);
  j["kappa"] = g.kappa;
  j["base_ratio"] = g.base_ratio;
  j["quotient"] = g.is_quotient;
  j["equicontractive"] = g.equicontractive;
  j["heuristic"] = g.heuristic;
  j["alphabet"] = g.alphabet;
  j["dimension"] = g.dimension;
  json vertices = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& v = g.vertex(static_cast<int>(i));
    json jv;
    jv["id"] = i;
    jv["level"] = v.level;
    json words = json::array();
    for (const auto& w : v.words) words.push_back(w.to_string());
    jv["words"] = words;
    if (!v.cube.empty()) jv["cube"] = v.cube;
    if (!v.name.empty()) jv["name"] = v.name;
    vertices.push_back(jv);
  }
  j["vertices"] = vertices;
  const auto edges = edge_lists(g);
  json ev = json::array(), eh = json::array(), es = json::array();
  for (const auto& [p, c] : edges.ev) ev.push_back(json::array({p, c}));
  for (const auto& [a, b, s] : edges.eh) eh.push_back(json::array({a, b, status_name(s)}));
  for (const auto& [a, b] : edges.es) es.push_back(json::array({a, b}));
  j["ev"] = ev;
  j["eh"] = eh;
  j["es"] = es;
  return detail::dump_json(j);
}

AugmentedGraph import_graph_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (j.value("schema", std::string{}) != "augtree-graph") throw InvalidArgument("graph json: missing schema tag");
    if (j.at("version").get<int>() != kGraphSchemaVersion)
      throw InvalidArgument("graph json: unsupported schema version " + j.at("version").dump());
    AugmentedGraph g;
    g.builder = builder_kind_from_string(j.value("builder", std::string("imported")));
    g.kappa = j.value("kappa", 0.0);
    g.base_ratio = j.value("base_ratio", 0.5);
    g.is_quotient = j.value("quotient", false);
    g.equicontractive = j.value("equicontractive", false);
    g.heuristic = j.value("heuristic", false);
    g.alphabet = j.value("alphabet", 0);
    g.dimension = j.value("dimension", 0);
    const auto& vertices = j.at("vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& jv = vertices[i];
      if (jv.value("id", static_cast<long>(i)) != static_cast<long>(i))
        throw InvalidArgument("graph json: vertex ids must be 0..n-1 in order");
      Vertex v;
      v.level = jv.at("level").get<int>();
      if (v.level < 0) throw InvalidArgument("graph json: negative level");
      for (const auto& w : jv.value("words", json::array())) v.words.push_back(Word::parse(w.get<std::string>()));
      if (jv.contains("cube")) v.cube = jv.at("cube").get<std::vector<std::int64_t>>();
      v.name = jv.value("name", std::string{});
      g.add_vertex(std::move(v));
    }
    const int n = static_cast<int>(g.size());
    auto check = [n](int a, int b) {
      if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidArgument("graph json: edge endpoint out of range");
    };
    for (const auto& e : j.at("ev")) {
      const int p = e.at(0).get<int>(), c = e.at(1).get<int>();
      check(p, c);
      g.add_vertical(p, c);
    }
    for (const auto& e : j.at("eh")) {
      const int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      check(a, b);
      const std::string s = e.size() > 2 ? e.at(2).get<std::string>() : "certified";
      if (s != "certified" && s != "uncertain") throw InvalidArgument("graph json: unknown edge status '" + s + "'");
      g.add_horizontal(a, b, s == "certified" ? EdgeStatus::certified : EdgeStatus::uncertain);
    }
    for (const auto& e : j.value("es", json::array())) {
      const int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      check(a, b);
      g.add_slanted(a, b);
    }
    g.validate();
    return g;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("graph json: ") + e.what());
  } catch (const InternalError& e) {
    throw InvalidArgument(std::string("graph json: ") + e.what());
  }
}

AugmentedGraph load_graph_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read graph file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return import_graph_json(ss.str());
}

std::string export_dot(const AugmentedGraph& g) {
  std::ostringstream out;
  out << "graph augtree {\n  rankdir=TB;\n  node [shape=circle, fontsize=10];\n";
  for (int n = 0; n <= g.depth(); ++n) {
    out << "  { rank=same;";
    for (int v : g.level(n)) out << " v" << v << ";";
    out << " }\n";
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    out << "  v" << i << " [label=\"" << g.vertex(static_cast<int>(i)).label() << "\"];\n";
  const auto edges = edge_lists(g);
  for (const auto& [p, c] : edges.ev) out << "  v" << p << " -- v" << c << " [style=solid];\n";
  for (const auto& [a, b, s] : edges.eh)
    out << "  v" << a << " -- v" << b << " [style=dashed" << (s == EdgeStatus::uncertain ? ", color=gray" : "")
        << ", constraint=false];\n";
  for (const auto& [a, b] : edges.es) out << "  v" << a << " -- v" << b << " [style=dotted];\n";
  out << "}\n";
  return out.str();
}

std::string export_degree_csv(const AugmentedGraph& g) {
  CsvWriter csv({"id", "level", "label", "degree", "vertical", "horizontal", "slanted"});
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int v = static_cast<int>(i);
    const std::size_t vertical = g.parents(v).size() + g.children(v).size();
    csv.row({std::to_string(v), std::to_string(g.level_of(v)), g.vertex(v).label(), std::to_string(g.degree(v)),
             std::to_string(vertical), std::to_string(g.horizontal_degree(v)), std::to_string(g.slanted(v).size())});
  }
  return csv.str();
}

}  // namespace augtree
