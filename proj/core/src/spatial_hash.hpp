#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "augtree/ifs.hpp"

namespace augtree::detail {

/// Uniform grid over R^d (d <= 4) keyed by integer bucket coordinates.
class SpatialHash {
 public:
  using Key = std::array<std::int64_t, kMaxDim>;

  SpatialHash(double cell, int dim) : cell_(cell > 0.0 ? cell : 1.0), dim_(dim) {}

  Key key(const Vec& p) const {
    Key k{};
    for (int i = 0; i < dim_; ++i) k[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(p(i) / cell_));
    return k;
  }

  void insert(const Vec& p, int id) { buckets_[key(p)].push_back(id); }

  /// Visits every id stored within `reach` buckets of p along each axis.
  template <class F>
  void query(const Vec& p, F&& f, int reach = 1) const {
    const Key base = key(p);
    Key k = base;
    visit(0, base, k, reach, f);
  }

  double cell() const { return cell_; }

 private:
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL;
      for (auto v : k) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  template <class F>
  void visit(int axis, const Key& base, Key& k, int reach, F& f) const {
    if (axis == dim_) {
      auto it = buckets_.find(k);
      if (it != buckets_.end())
        for (int id : it->second) f(id);
      return;
    }
    const auto a = static_cast<std::size_t>(axis);
    for (int o = -reach; o <= reach; ++o) {
      k[a] = base[a] + o;
      visit(axis + 1, base, k, reach, f);
    }
    k[a] = base[a];
  }

  double cell_;
  int dim_;
  std::unordered_map<Key, std::vector<int>, KeyHash> buckets_;
};

}  // namespace augtree::detail
