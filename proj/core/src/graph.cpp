#include "augtree/graph.hpp"

#include <algorithm>

#include "augtree/error.hpp"

namespace augtree {

std::string to_string(BuilderKind kind) {
  switch (kind) {
    case BuilderKind::ifs: return "ifs";
    case BuilderKind::moran: return "moran";
    case BuilderKind::dyadic: return "dyadic";
    case BuilderKind::imported: return "imported";
  }
  return "imported";
}

BuilderKind builder_kind_from_string(const std::string& text) {
  if (text == "ifs") return BuilderKind::ifs;
  if (text == "moran") return BuilderKind::moran;
  if (text == "dyadic") return BuilderKind::dyadic;
  if (text == "imported") return BuilderKind::imported;
  throw InvalidArgument("unknown builder kind '" + text + "'");
}

std::string Vertex::label() const {
  if (!words.empty()) {
    std::string s;
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) s += '|';
      s += words[i].empty() ? "o" : words[i].to_string();
    }
    return s;
  }
  if (!cube.empty()) {
    std::string s = "c" + std::to_string(level) + ":";
    for (std::size_t i = 0; i < cube.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(cube[i]);
    }
    return s;
  }
  return name;
}

int AugmentedGraph::add_vertex(Vertex v) {
  if (v.level < 0) throw InvalidArgument("negative level");
  const int id = static_cast<int>(vertices_.size());
  if (static_cast<std::size_t>(v.level) >= levels_.size()) levels_.resize(static_cast<std::size_t>(v.level) + 1);
  levels_[static_cast<std::size_t>(v.level)].push_back(id);
  for (const auto& w : v.words) word_index_.emplace(w, id);
  vertices_.push_back(std::move(v));
  up_.emplace_back();
  down_.emplace_back();
  horiz_.emplace_back();
  slant_.emplace_back();
  return id;
}

void AugmentedGraph::add_vertical(int parent, int child) {
  if (level_of(child) != level_of(parent) + 1) throw InvalidArgument("vertical edge must join consecutive levels");
  auto& ups = up_[static_cast<std::size_t>(child)];
  if (std::find(ups.begin(), ups.end(), parent) != ups.end()) return;
  ups.push_back(parent);
  down_[static_cast<std::size_t>(parent)].push_back(child);
}

void AugmentedGraph::add_horizontal(int a, int b, EdgeStatus status) {
  if (a == b) throw InvalidArgument("horizontal edges are irreflexive");
  if (level_of(a) != level_of(b)) throw InvalidArgument("horizontal edge must join equal levels");
  auto upgrade = [&](int x, int y) {
    auto& edges = horiz_[static_cast<std::size_t>(x)];
    for (auto& e : edges)
      if (e.to == y) {
        if (status == EdgeStatus::certified) e.status = status;
        return true;
      }
    edges.push_back({y, status});
    return false;
  };
  upgrade(a, b);
  upgrade(b, a);
}

void AugmentedGraph::add_slanted(int a, int b) {
  if (std::abs(level_of(a) - level_of(b)) != 1) throw InvalidArgument("slanted edge must join consecutive levels");
  auto& sa = slant_[static_cast<std::size_t>(a)];
  if (std::find(sa.begin(), sa.end(), b) != sa.end()) return;
  sa.push_back(b);
  slant_[static_cast<std::size_t>(b)].push_back(a);
}

int AugmentedGraph::parent(int v) const {
  if (is_quotient) throw Unsupported("quotient graphs have no unique parent");
  const auto& ups = up_[static_cast<std::size_t>(v)];
  if (ups.empty()) throw InvalidArgument("the root has no parent");
  if (ups.size() != 1) throw Unsupported("vertex has several parents");
  return ups.front();
}

bool AugmentedGraph::has_horizontal(int a, int b, bool include_uncertain) const {
  for (const auto& e : horiz_[static_cast<std::size_t>(a)])
    if (e.to == b) return include_uncertain || e.status == EdgeStatus::certified;
  return false;
}

bool AugmentedGraph::adjacent(int a, int b, bool include_uncertain) const {
  bool found = false;
  for_each_neighbor(a, [&](int u) { found = found || u == b; }, include_uncertain);
  return found;
}

int AugmentedGraph::horizontal_degree(int v, bool include_uncertain) const {
  const auto& edges = horiz_[static_cast<std::size_t>(v)];
  if (include_uncertain) return static_cast<int>(edges.size());
  return static_cast<int>(
      std::count_if(edges.begin(), edges.end(), [](const HorizontalEdge& e) { return e.status == EdgeStatus::certified; }));
}

int AugmentedGraph::degree(int v, bool include_uncertain) const {
  const auto i = static_cast<std::size_t>(v);
  return static_cast<int>(up_[i].size() + down_[i].size() + slant_[i].size()) + horizontal_degree(v, include_uncertain);
}

std::optional<int> AugmentedGraph::find_word(const Word& w) const {
  auto it = word_index_.find(w);
  if (it == word_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t AugmentedGraph::vertical_edge_count() const {
  std::size_t n = 0;
  for (const auto& u : up_) n += u.size();
  return n;
}

std::size_t AugmentedGraph::horizontal_edge_count(bool include_uncertain) const {
  std::size_t n = 0;
  for (std::size_t v = 0; v < horiz_.size(); ++v) n += static_cast<std::size_t>(horizontal_degree(static_cast<int>(v), include_uncertain));
  return n / 2;
}

std::size_t AugmentedGraph::uncertain_edge_count() const {
  return horizontal_edge_count(true) - horizontal_edge_count(false);
}

std::size_t AugmentedGraph::slanted_edge_count() const {
  std::size_t n = 0;
  for (const auto& s : slant_) n += s.size();
  return n / 2;
}

AugmentedGraph AugmentedGraph::without_uncertain() const {
  AugmentedGraph g = *this;
  for (auto& edges : g.horiz_)
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [](const HorizontalEdge& e) { return e.status == EdgeStatus::uncertain; }),
                edges.end());
  return g;
}

AugmentedGraph AugmentedGraph::without_horizontal() const {
  AugmentedGraph g = *this;
  for (auto& edges : g.horiz_) edges.clear();
  return g;
}

void AugmentedGraph::validate() const {
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const int lv = vertices_[v].level;
    const auto& ups = up_[v];
    if (lv == 0 && !ups.empty()) throw InternalError("root-level vertex has a parent");
    if (lv > 0 && ups.empty()) throw InternalError("vertex " + vertices_[v].label() + " has no parent");
    if (!is_quotient && ups.size() > 1) throw InternalError("tree vertex " + vertices_[v].label() + " has several parents");
    for (int p : ups)
      if (level_of(p) != lv - 1) throw InternalError("vertical edge skips a level");
    for (const auto& e : horiz_[v]) {
      if (e.to == static_cast<int>(v)) throw InternalError("horizontal self-loop");
      if (level_of(e.to) != lv) throw InternalError("horizontal edge joins different levels");
      const auto& back = horiz_[static_cast<std::size_t>(e.to)];
      auto it = std::find_if(back.begin(), back.end(), [&](const HorizontalEdge& x) { return x.to == static_cast<int>(v); });
      if (it == back.end() || it->status != e.status) throw InternalError("horizontal edges are not symmetric");
    }
    for (int s : slant_[v]) {
      if (std::abs(level_of(s) - lv) != 1) throw InternalError("slanted edge must join consecutive levels");
      if (std::find(ups.begin(), ups.end(), s) != ups.end() ||
          std::find(down_[v].begin(), down_[v].end(), s) != down_[v].end())
        throw InternalError("slanted edge duplicates a vertical edge");
    }
  }
  if (!levels_.empty() && levels_[0].size() != 1) throw InternalError("level 0 must hold exactly the root");
}

}  // namespace augtree
