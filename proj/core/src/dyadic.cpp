#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "augtree/error.hpp"
#include "augtree/tree_builder.hpp"

namespace augtree {
namespace {

using Corner = std::vector<std::int64_t>;

// Builds the graph from the cubes meeting K on every level. Each level's
// cubes must be children of cubes on the previous level.
GeometricGraph assemble(const std::vector<std::set<Corner>>& levels, int dim, double kappa) {
  GeometricGraph out;
  AugmentedGraph& g = out.graph;
  g.base_ratio = 0.5;
  g.dimension = dim;
  g.alphabet = 1 << dim;
  g.builder = BuilderKind::dyadic;
  g.kappa = kappa;

  auto root = RootNet::build(unit_cube_spec(dim));
  std::map<Corner, int> previous;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    std::map<Corner, int> current;
    const double side = std::ldexp(1.0, -static_cast<int>(k));
    for (const auto& c : levels[k]) {
      Vertex v;
      v.level = static_cast<int>(k);
      v.cube = c;
      const int id = g.add_vertex(std::move(v));
      current.emplace(c, id);
      if (k > 0) {
        Corner parent(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) parent[i] = c[i] >> 1;
        auto it = previous.find(parent);
        if (it == previous.end()) throw InternalError("dyadic cube without parent");
        g.add_vertical(it->second, id);
      }
      ComposedMap m = identity_map(dim);
      m.linear *= side;
      for (int i = 0; i < dim; ++i) m.translation(i) = side * static_cast<double>(c[static_cast<std::size_t>(i)]);
      m.min_ratio = m.max_ratio = side;
      out.cells.push_back(build_cell(std::move(m), root));
    }

    // Closed cubes at gap g (in cube units) have distance side * |g|; edge iff |g| <= kappa.
    const auto reach = static_cast<std::int64_t>(std::floor(kappa)) + 1;
    std::vector<Corner> offsets{Corner{}};
    for (int i = 0; i < dim; ++i) {
      std::vector<Corner> grown;
      for (const auto& o : offsets)
        for (std::int64_t x = -reach; x <= reach; ++x) {
          Corner e = o;
          e.push_back(x);
          grown.push_back(std::move(e));
        }
      offsets = std::move(grown);
    }
    for (const auto& [c, id] : current) {
      for (const auto& o : offsets) {
        double gap2 = 0.0;
        bool zero = true;
        Corner other(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
          other[i] = c[i] + o[i];
          zero = zero && o[i] == 0;
          const double gi = static_cast<double>(std::max<std::int64_t>(0, std::abs(o[i]) - 1));
          gap2 += gi * gi;
        }
        if (zero || gap2 > kappa * kappa) continue;
        auto it = current.find(other);
        if (it != current.end() && it->second > id) g.add_horizontal(id, it->second, EdgeStatus::certified);
      }
    }
    previous = std::move(current);
  }
  g.validate();
  return out;
}

}  // namespace

GeometricGraph build_dyadic_tree(const CubeOracle& meets, int dim, int depth, double kappa, std::size_t budget) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("dimension must be in 1..4");
  if (depth < 0) throw InvalidArgument("depth must be >= 0");
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  std::vector<std::set<Corner>> levels(1);
  const Corner origin(static_cast<std::size_t>(dim), 0);
  if (!meets(origin, 0)) throw InvalidArgument("K does not meet the unit cube");
  levels[0].insert(origin);
  std::size_t used = 1;
  for (int k = 1; k <= depth; ++k) {
    std::set<Corner> next;
    for (const auto& c : levels.back())
      for (int e = 0; e < (1 << dim); ++e) {
        Corner child(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) child[i] = 2 * c[i] + ((e >> i) & 1);
        if (meets(child, k)) next.insert(std::move(child));
      }
    used += next.size();
    if (used > budget) throw BudgetExceeded("dyadic tree exceeds the vertex budget of " + std::to_string(budget));
    levels.push_back(std::move(next));
  }
  return assemble(levels, dim, kappa);
}

GeometricGraph build_dyadic_tree(const std::vector<Vec>& sample, int depth, double kappa, std::size_t budget) {
  if (sample.empty()) throw InvalidArgument("empty sample");
  if (depth < 0) throw InvalidArgument("depth must be >= 0");
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  const int dim = static_cast<int>(sample.front().size());
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("dimension must be in 1..4");
  for (const auto& p : sample) {
    if (p.size() != dim) throw InvalidArgument("sample points have mixed dimensions");
    for (int i = 0; i < dim; ++i)
      if (!(p(i) >= 0.0 && p(i) <= 1.0)) throw InvalidArgument("sample point outside [0,1]^d");
  }

  std::vector<std::set<Corner>> levels;
  std::size_t used = 0;
  for (int k = 0; k <= depth; ++k) {
    const double scale = std::ldexp(1.0, k);
    const auto top = static_cast<std::int64_t>(scale) - 1;
    std::set<Corner> cubes;
    for (const auto& p : sample) {
      // A point on a cube face lies in every closed cube sharing that face.
      std::vector<std::vector<std::int64_t>> axis(static_cast<std::size_t>(dim));
      for (int i = 0; i < dim; ++i) {
        const double s = p(i) * scale;
        const auto f = static_cast<std::int64_t>(std::floor(s));
        auto& a = axis[static_cast<std::size_t>(i)];
        if (f <= top) a.push_back(f);
        if (static_cast<double>(f) == s && f - 1 >= 0) a.push_back(f - 1);
      }
      std::vector<Corner> combos{Corner{}};
      for (const auto& a : axis) {
        std::vector<Corner> grown;
        for (const auto& c : combos)
          for (auto x : a) {
            Corner e = c;
            e.push_back(x);
            grown.push_back(std::move(e));
          }
        combos = std::move(grown);
      }
      for (auto& c : combos) cubes.insert(std::move(c));
    }
    used += cubes.size();
    if (used > budget) throw BudgetExceeded("dyadic tree exceeds the vertex budget of " + std::to_string(budget));
    levels.push_back(std::move(cubes));
  }
  return assemble(levels, dim, kappa);
}

}  // namespace augtree
