#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include <Eigen/Sparse>

#include "augtree/graph.hpp"

namespace augtree {

/// Simple random walk P(x, y) = 1/deg(x), absorbed on level H.
class TruncatedChain {
 public:
  TruncatedChain(const AugmentedGraph& g, int horizon, bool include_uncertain = true);

  const AugmentedGraph& graph() const { return *g_; }
  int horizon() const { return horizon_; }
  int origin() const { return g_->root(); }
  bool include_uncertain() const { return include_uncertain_; }

  const std::vector<int>& interior() const { return interior_; }
  const std::vector<int>& absorbing() const { return absorbing_; }
  /// Position in interior() / absorbing(), or -1.
  int interior_index(int v) const { return interior_index_[static_cast<std::size_t>(v)]; }
  int absorbing_index(int v) const { return absorbing_index_[static_cast<std::size_t>(v)]; }

  const std::vector<int>& neighbors(int v) const { return nbrs_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(nbrs_[static_cast<std::size_t>(v)].size()); }
  /// P(x, y); identity on absorbing rows.
  double transition(int x, int y) const;

  /// Q = P restricted to interior x interior.
  Eigen::SparseMatrix<double> interior_matrix() const;

 private:
  const AugmentedGraph* g_;
  int horizon_;
  bool include_uncertain_;
  std::vector<int> interior_;
  std::vector<int> absorbing_;
  std::vector<int> interior_index_;
  std::vector<int> absorbing_index_;
  std::vector<std::vector<int>> nbrs_;  // with multiplicity, levels <= H
};

struct HittingDistribution {
  std::vector<std::uint64_t> counts;  // aligned with chain.absorbing()
  std::uint64_t walks = 0;
  std::uint64_t censored = 0;  // walks stopped by the step cap
  std::uint64_t seed = 0;
  std::vector<double> frequencies() const;
};

/// Walks from the origin; walk i draws from SplitMix64 seeded by (seed, i),
/// so the result does not depend on the thread count.
HittingDistribution simulate_walks(const TruncatedChain& chain, std::uint64_t count, std::uint64_t seed,
                                   int threads = 1);

/// Monte-Carlo expected visits to each interior vertex before absorption,
/// with the standard error of each mean.
struct VisitEstimate {
  std::vector<double> mean;    // aligned with chain.interior()
  std::vector<double> standard_error;
};
VisitEstimate simulate_visits(const TruncatedChain& chain, int start, std::uint64_t count, std::uint64_t seed,
                              int threads = 1);

inline constexpr double kSolverTolerance = 1e-10;
inline constexpr std::size_t kDefaultInteriorBudget = 200'000;

/// G(x, y) = expected visits to y from x before absorption, x and y interior.
/// Columns are solved on demand from one sparse LU factorisation of I - Q.
class GreenTable {
 public:
  explicit GreenTable(const TruncatedChain& chain, std::size_t interior_budget = kDefaultInteriorBudget);

  const TruncatedChain& chain() const { return *chain_; }
  /// 0 when either vertex is absorbing.
  double operator()(int x, int y) const;
  /// G(., y) over chain.interior().
  const Eigen::VectorXd& column(int y) const;
  /// G(origin, .) over chain.interior().
  const Eigen::VectorXd& origin_row() const { return origin_row_; }
  /// Largest max-norm residual of any solve so far.
  double residual() const;

 private:
  Eigen::VectorXd solve(Eigen::SparseLU<Eigen::SparseMatrix<double>>& lu, const Eigen::SparseMatrix<double>& a,
                        int index) const;

  const TruncatedChain* chain_;
  Eigen::SparseMatrix<double> a_;   // I - Q
  Eigen::SparseMatrix<double> at_;  // its transpose
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  Eigen::VectorXd origin_row_;
  mutable std::map<int, Eigen::VectorXd> columns_;
  mutable double residual_ = 0.0;
  mutable std::mutex mutex_;
};

/// nu(a) = sum over interior x of G(origin, x) P(x, a), aligned with chain.absorbing().
std::vector<double> absorption_distribution(const GreenTable& green);

double martin_kernel(const GreenTable& green, int x, int y);
double naim_kernel(const GreenTable& green, int x, int y);

struct KernelSample {
  int x = -1;
  int y = -1;
  int gromov_twice = 0;  // 2|x ∧ y|
  double K = 0.0;
  double theta = 0.0;
  double predicted = 0.0;  // N^(2|x∧y| - |x|)
};

struct Regression {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_spread = 0.0;  // max |residual|
  std::size_t points = 0;
  bool inconclusive = true;
};

/// Least squares y = slope x + intercept; inconclusive when x is constant.
Regression fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct KernelReport {
  std::vector<KernelSample> samples;
  int branching = 0;   // N
  double alpha = 0.0;  // log N / -log r
  Regression martin;   // log K against (2|x∧y| - |x|) log N
  Regression naim;     // log Theta against 2|x∧y| log N
};

/// Pairs x != y of interior vertices on levels <= H - 2; all of them when
/// max_pairs is 0, otherwise a seeded sample.
KernelReport kernel_scaling(const GreenTable& green, std::size_t max_pairs = 0, std::uint64_t seed = 0);

/// Total variation between hitting mass aggregated to level-m ancestors and
/// the uniform law on level m, for m = 1..H-2 (index m - 1).
std::vector<double> harmonic_tv(const TruncatedChain& chain, const std::vector<double>& hitting);

/// Largest relative change of G(origin, x) over levels <= H - 2 between
/// horizons H and H + 2; nullopt when the graph is shallower than H + 2.
std::optional<double> truncation_delta(const AugmentedGraph& g, int horizon, bool include_uncertain = true);

}  // namespace augtree
