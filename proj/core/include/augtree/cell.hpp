#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "augtree/ifs.hpp"

namespace augtree {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct Ball {
  Vec center;
  double radius = 0.0;
};

/// Certified hierarchical point net of an attractor K.
///
/// Node u carries the ball B(S_u(c), R_u rho), which contains K_u. Leaves
/// stop once 2 R_u rho <= epsilon and hold the points S_u(f_j), f_j the
/// generator fixed points, so every net point lies in K and every point of K
/// is within epsilon of the net.
class RootNet {
 public:
  struct Node {
    Vec center;
    double radius = 0.0;
    std::int32_t first_child = -1;
    std::int32_t child_count = 0;
    std::int32_t first_point = -1;
    std::int32_t point_count = 0;
    bool leaf() const { return child_count == 0; }
  };

  /// epsilon <= 0 selects 1e-3 times a coarse estimate of |K|.
  static std::shared_ptr<const RootNet> build(const ContractionSpec& spec, double epsilon = 0.0,
                                              std::size_t node_budget = 20'000'000);

  int dim() const { return dim_; }
  double epsilon() const { return epsilon_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Vec>& points() const { return points_; }
  const Ball& ball() const { return ball_; }
  /// Bounds on |K|.
  const Interval& diameter() const { return diameter_; }
  /// f_0, the fixed point of the first generator; a point of K.
  const Vec& anchor() const { return anchor_; }

 private:
  int dim_ = 0;
  double epsilon_ = 0.0;
  std::vector<Node> nodes_;
  std::vector<Vec> points_;
  Ball ball_;
  Interval diameter_;
  Vec anchor_;
};

/// Certified approximation of a cell S_w(K).
struct CellApprox {
  ComposedMap map;
  std::shared_ptr<const RootNet> root;
  double net_error = 0.0;  // Hausdorff distance bound between net() and the cell
  Ball bounding_ball;
  Interval diameter;

  std::vector<Vec> net() const;
  /// S_w(f_0): a point of the cell, used as the finite-depth boundary stand-in.
  Vec representative() const;
};

CellApprox build_cell(ComposedMap map, std::shared_ptr<const RootNet> root);
CellApprox build_cell(const Word& w, std::shared_ptr<const RootNet> root, const ContractionSpec& spec);

/// Interval containing dist(cell a, cell b); hi is attained by two net points.
Interval cell_distance(const CellApprox& a, const CellApprox& b);

enum class EdgeDecision { absent, uncertain, certified };

/// Classifies dist(a, b) <= threshold: certified when some net pair is within
/// the threshold, absent when the lower bound exceeds it, uncertain otherwise.
EdgeDecision decide_edge(const CellApprox& a, const CellApprox& b, double threshold);

/// Same classification for dist(p, cell) <= radius, i.e. whether the closed
/// ball B(p, radius) meets the cell.
EdgeDecision decide_point(const Vec& p, const CellApprox& cell, double radius);

/// Lower bound on the distance between the bounding balls.
double ball_gap(const CellApprox& a, const CellApprox& b);

}  // namespace augtree
