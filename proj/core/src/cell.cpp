#include "augtree/cell.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "augtree/error.hpp"

namespace augtree {
namespace {

struct Frame {
  std::int32_t a;
  std::int32_t b;
  double bound;
};

// Image of a root-net node under a cell map.
struct Placed {
  Vec center;
  double radius;
};

Placed place(const CellApprox& cell, const RootNet::Node& n) {
  return {cell.map.apply(n.center), cell.map.max_ratio * n.radius};
}

double gap(const Placed& x, const Placed& y) { return std::max(0.0, (x.center - y.center).norm() - x.radius - y.radius); }

// Minimum distance between the nets of a and b. Node pairs whose lower
// bound exceeds `prune` or cannot beat the incumbent by more than `eta` are
// skipped; the search stops as soon as a pair within `stop` is found.
double min_net_distance(const CellApprox& a, const CellApprox& b, double prune, double stop, double eta) {
  const auto& na = a.root->nodes();
  const auto& nb = b.root->nodes();
  const auto& pa = a.root->points();
  const auto& pb = b.root->points();

  double best = std::numeric_limits<double>::infinity();
  std::vector<Frame> stack;
  stack.push_back({0, 0, gap(place(a, na[0]), place(b, nb[0]))});
  std::vector<Frame> children;

  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.bound > prune || f.bound >= best - eta) continue;
    const auto& x = na[static_cast<std::size_t>(f.a)];
    const auto& y = nb[static_cast<std::size_t>(f.b)];

    if (x.leaf() && y.leaf()) {
      for (std::int32_t i = 0; i < x.point_count; ++i) {
        const Vec p = a.map.apply(pa[static_cast<std::size_t>(x.first_point + i)]);
        for (std::int32_t j = 0; j < y.point_count; ++j) {
          const double d = (p - b.map.apply(pb[static_cast<std::size_t>(y.first_point + j)])).norm();
          if (d < best) best = d;
        }
      }
      if (best <= stop) return best;
      continue;
    }

    const bool split_a = !x.leaf() && (y.leaf() || a.map.max_ratio * x.radius >= b.map.max_ratio * y.radius);
    children.clear();
    if (split_a) {
      const Placed py = place(b, y);
      for (std::int32_t c = 0; c < x.child_count; ++c) {
        const std::int32_t id = x.first_child + c;
        children.push_back({id, f.b, gap(place(a, na[static_cast<std::size_t>(id)]), py)});
      }
    } else {
      const Placed px = place(a, x);
      for (std::int32_t c = 0; c < y.child_count; ++c) {
        const std::int32_t id = y.first_child + c;
        children.push_back({f.a, id, gap(px, place(b, nb[static_cast<std::size_t>(id)]))});
      }
    }
    // Closest pair ends on top of the stack.
    std::sort(children.begin(), children.end(), [](const Frame& l, const Frame& r) { return l.bound > r.bound; });
    for (const auto& c : children)
      if (c.bound <= prune && c.bound < best - eta) stack.push_back(c);
  }
  return best;
}

double max_net_distance(const RootNet& net, double tol) {
  const auto& nodes = net.nodes();
  const auto& pts = net.points();
  double best = 0.0;
  std::vector<Frame> stack;
  auto upper = [&](std::int32_t i, std::int32_t j) {
    const auto& x = nodes[static_cast<std::size_t>(i)];
    const auto& y = nodes[static_cast<std::size_t>(j)];
    return (x.center - y.center).norm() + x.radius + y.radius;
  };
  stack.push_back({0, 0, upper(0, 0)});
  std::vector<Frame> children;
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.bound <= best + tol) continue;
    const auto& x = nodes[static_cast<std::size_t>(f.a)];
    const auto& y = nodes[static_cast<std::size_t>(f.b)];
    if (x.leaf() && y.leaf()) {
      for (std::int32_t i = 0; i < x.point_count; ++i)
        for (std::int32_t j = 0; j < y.point_count; ++j)
          best = std::max(best, (pts[static_cast<std::size_t>(x.first_point + i)] -
                                 pts[static_cast<std::size_t>(y.first_point + j)]).norm());
      continue;
    }
    const bool split_a = !x.leaf() && (y.leaf() || x.radius >= y.radius);
    children.clear();
    if (split_a) {
      for (std::int32_t c = 0; c < x.child_count; ++c) {
        const std::int32_t id = x.first_child + c;
        children.push_back({id, f.b, upper(id, f.b)});
      }
    } else {
      for (std::int32_t c = 0; c < y.child_count; ++c) {
        const std::int32_t id = y.first_child + c;
        children.push_back({f.a, id, upper(f.a, id)});
      }
    }
    std::sort(children.begin(), children.end(), [](const Frame& l, const Frame& r) { return l.bound < r.bound; });
    for (const auto& c : children)
      if (c.bound > best + tol) stack.push_back(c);
  }
  return best;
}

}  // namespace

std::shared_ptr<const RootNet> RootNet::build(const ContractionSpec& spec, double epsilon, std::size_t node_budget) {
  if (spec.size() == 0) throw InvalidArgument("empty contraction spec");
  const int d = spec.dim();
  const auto& fixed = spec.fixed_points();

  Vec c = Vec::Zero(d);
  for (const auto& f : fixed) c += f;
  c /= static_cast<double>(fixed.size());
  double rho = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    rho = std::max(rho, (spec[i].apply(c) - c).norm() / (1.0 - spec[i].max_ratio));

  if (epsilon <= 0.0) {
    if (rho == 0.0) {
      epsilon = 1e-3;
    } else {
      auto coarse = build(spec, rho / 8.0, node_budget);
      const double est = coarse->diameter().lo;
      epsilon = est > 0.0 ? 1e-3 * est : 1e-3 * rho;
    }
  }

  auto net = std::make_shared<RootNet>();
  net->dim_ = d;
  net->epsilon_ = epsilon;
  net->ball_ = {c, rho};
  net->anchor_ = fixed.front();

  std::vector<ComposedMap> maps;
  maps.push_back(identity_map(d));
  net->nodes_.push_back(Node{c, rho, -1, 0, -1, 0});

  for (std::size_t i = 0; i < net->nodes_.size(); ++i) {
    const ComposedMap m = maps[i];
    const double radius = m.max_ratio * rho;
    if (2.0 * radius <= epsilon) {
      Node& n = net->nodes_[i];
      n.first_point = static_cast<std::int32_t>(net->points_.size());
      n.point_count = static_cast<std::int32_t>(fixed.size());
      for (const auto& f : fixed) net->points_.push_back(m.apply(f));
      continue;
    }
    if (net->nodes_.size() + spec.size() > node_budget)
      throw BudgetExceeded("attractor net needs more than " + std::to_string(node_budget) + " nodes");
    net->nodes_[i].first_child = static_cast<std::int32_t>(net->nodes_.size());
    net->nodes_[i].child_count = static_cast<std::int32_t>(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
      ComposedMap child = extend(m, static_cast<Letter>(k), spec);
      net->nodes_.push_back(Node{child.apply(c), child.max_ratio * rho, -1, 0, -1, 0});
      maps.push_back(std::move(child));
    }
    maps[i] = ComposedMap{};  // release
  }

  const double tol = 0.25 * epsilon;
  const double far = max_net_distance(*net, tol);
  net->diameter_ = {far, far + tol + 2.0 * epsilon};
  return net;
}

std::vector<Vec> CellApprox::net() const {
  std::vector<Vec> out;
  out.reserve(root->points().size());
  for (const auto& p : root->points()) out.push_back(map.apply(p));
  return out;
}

Vec CellApprox::representative() const { return map.apply(root->anchor()); }

CellApprox build_cell(ComposedMap map, std::shared_ptr<const RootNet> root) {
  CellApprox cell;
  cell.net_error = map.max_ratio * root->epsilon();
  cell.bounding_ball = {map.apply(root->ball().center), map.max_ratio * root->ball().radius};
  cell.diameter = {map.min_ratio * root->diameter().lo, map.max_ratio * root->diameter().hi};
  cell.map = std::move(map);
  cell.root = std::move(root);
  return cell;
}

CellApprox build_cell(const Word& w, std::shared_ptr<const RootNet> root, const ContractionSpec& spec) {
  return build_cell(compose(w, spec), std::move(root));
}

double ball_gap(const CellApprox& a, const CellApprox& b) {
  return std::max(0.0, (a.bounding_ball.center - b.bounding_ball.center).norm() - a.bounding_ball.radius -
                           b.bounding_ball.radius);
}

Interval cell_distance(const CellApprox& a, const CellApprox& b) {
  const double errors = a.net_error + b.net_error;
  const double eta = 0.25 * errors;
  const double best =
      min_net_distance(a, b, std::numeric_limits<double>::infinity(), -1.0, eta);
  return {std::max(0.0, best - eta - errors), best};
}

EdgeDecision decide_edge(const CellApprox& a, const CellApprox& b, double threshold) {
  const double slack = threshold + a.net_error + b.net_error;
  if (ball_gap(a, b) > slack) return EdgeDecision::absent;
  const double best = min_net_distance(a, b, slack, threshold, 0.0);
  if (best <= threshold) return EdgeDecision::certified;
  if (best <= slack) return EdgeDecision::uncertain;
  return EdgeDecision::absent;
}

EdgeDecision decide_point(const Vec& p, const CellApprox& cell, double radius) {
  const double slack = radius + cell.net_error;
  const auto& nodes = cell.root->nodes();
  const auto& pts = cell.root->points();
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    const auto& n = nodes[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    const Placed pn = place(cell, n);
    if ((pn.center - p).norm() - pn.radius > slack) continue;
    if (n.leaf()) {
      for (std::int32_t i = 0; i < n.point_count; ++i)
        best = std::min(best, (cell.map.apply(pts[static_cast<std::size_t>(n.first_point + i)]) - p).norm());
      if (best <= radius) return EdgeDecision::certified;
      continue;
    }
    for (std::int32_t c = 0; c < n.child_count; ++c) stack.push_back(n.first_child + c);
  }
  return best <= slack ? EdgeDecision::uncertain : EdgeDecision::absent;
}

}  // namespace augtree
