#include "augtree/randwalk.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "augtree/error.hpp"
#include "augtree/metric.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace augtree {

TruncatedChain::TruncatedChain(const AugmentedGraph& g, int horizon, bool include_uncertain)
    : g_(&g), horizon_(horizon), include_uncertain_(include_uncertain) {
  if (horizon < 1 || horizon > g.depth())
    throw InvalidArgument("horizon " + std::to_string(horizon) + " outside 1.." + std::to_string(g.depth()));
  interior_index_.assign(g.size(), -1);
  absorbing_index_.assign(g.size(), -1);
  nbrs_.resize(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    const int id = static_cast<int>(v);
    const int lv = g.level_of(id);
    if (lv < horizon) {
      interior_index_[v] = static_cast<int>(interior_.size());
      interior_.push_back(id);
      g.for_each_neighbor(
          id, [&](int u) { if (g.level_of(u) <= horizon) nbrs_[v].push_back(u); }, include_uncertain);
      if (nbrs_[v].empty()) throw InvalidArgument("vertex " + g.vertex(id).label() + " has no neighbours");
    } else if (lv == horizon) {
      absorbing_index_[v] = static_cast<int>(absorbing_.size());
      absorbing_.push_back(id);
    }
  }
}

double TruncatedChain::transition(int x, int y) const {
  if (interior_index(x) < 0) return x == y ? 1.0 : 0.0;
  const auto& n = neighbors(x);
  return static_cast<double>(std::count(n.begin(), n.end(), y)) / static_cast<double>(n.size());
}

Eigen::SparseMatrix<double> TruncatedChain::interior_matrix() const {
  std::vector<Eigen::Triplet<double>> t;
  for (std::size_t i = 0; i < interior_.size(); ++i) {
    const int x = interior_[i];
    const double p = 1.0 / degree(x);
    for (int y : neighbors(x)) {
      const int j = interior_index(y);
      if (j >= 0) t.emplace_back(static_cast<int>(i), j, p);
    }
  }
  const auto n = static_cast<Eigen::Index>(interior_.size());
  Eigen::SparseMatrix<double> q(n, n);
  q.setFromTriplets(t.begin(), t.end());
  return q;
}

std::vector<double> HittingDistribution::frequencies() const {
  std::vector<double> out(counts.size(), 0.0);
  const std::uint64_t done = walks - censored;
  if (done == 0) return out;
  for (std::size_t i = 0; i < counts.size(); ++i) out[i] = static_cast<double>(counts[i]) / static_cast<double>(done);
  return out;
}

namespace {

std::uint64_t step_cap(const TruncatedChain& chain) { return 1'000'000ULL * static_cast<std::uint64_t>(chain.horizon()); }

}  // namespace

HittingDistribution simulate_walks(const TruncatedChain& chain, std::uint64_t count, std::uint64_t seed, int threads) {
  if (count == 0) throw InvalidArgument("walk count must be positive");
  HittingDistribution out;
  out.walks = count;
  out.seed = seed;
  out.counts.assign(chain.absorbing().size(), 0);
  const std::size_t chunks = detail::chunk_count(count, threads);
  std::vector<std::vector<std::uint64_t>> part(chunks);
  std::vector<std::uint64_t> censored(chunks, 0);
  const std::uint64_t cap = step_cap(chain);
  detail::parallel_chunks(count, threads, [&](std::size_t begin, std::size_t end, std::size_t c) {
    auto& local = part[c];
    local.assign(chain.absorbing().size(), 0);
    for (std::size_t i = begin; i < end; ++i) {
      detail::SplitMixEngine rng{detail::SplitMix64(detail::mix_seed(seed, i))};
      int v = chain.origin();
      std::uint64_t steps = 0;
      while (chain.interior_index(v) >= 0 && steps < cap) {
        const auto& n = chain.neighbors(v);
        v = n[detail::uniform_below(rng, n.size())];
        ++steps;
      }
      const int a = chain.absorbing_index(v);
      if (a >= 0)
        ++local[static_cast<std::size_t>(a)];
      else
        ++censored[c];
    }
  });
  for (std::size_t c = 0; c < chunks; ++c) {
    for (std::size_t i = 0; i < part[c].size(); ++i) out.counts[i] += part[c][i];
    out.censored += censored[c];
  }
  return out;
}

VisitEstimate simulate_visits(const TruncatedChain& chain, int start, std::uint64_t count, std::uint64_t seed,
                              int threads) {
  if (count == 0) throw InvalidArgument("walk count must be positive");
  if (chain.interior_index(start) < 0) throw InvalidArgument("visits need an interior start vertex");
  const std::size_t n = chain.interior().size();
  const std::size_t chunks = detail::chunk_count(count, threads);
  std::vector<std::vector<double>> sum(chunks), sumsq(chunks);
  const std::uint64_t cap = step_cap(chain);
  detail::parallel_chunks(count, threads, [&](std::size_t begin, std::size_t end, std::size_t c) {
    sum[c].assign(n, 0.0);
    sumsq[c].assign(n, 0.0);
    std::vector<std::uint64_t> visits(n, 0);
    std::vector<int> touched;
    for (std::size_t i = begin; i < end; ++i) {
      detail::SplitMixEngine rng{detail::SplitMix64(detail::mix_seed(seed, i))};
      int v = start;
      std::uint64_t steps = 0;
      for (int k = chain.interior_index(v); k >= 0 && steps < cap; k = chain.interior_index(v)) {
        if (visits[static_cast<std::size_t>(k)]++ == 0) touched.push_back(k);
        const auto& nb = chain.neighbors(v);
        v = nb[detail::uniform_below(rng, nb.size())];
        ++steps;
      }
      for (int k : touched) {
        const double x = static_cast<double>(visits[static_cast<std::size_t>(k)]);
        sum[c][static_cast<std::size_t>(k)] += x;
        sumsq[c][static_cast<std::size_t>(k)] += x * x;
        visits[static_cast<std::size_t>(k)] = 0;
      }
      touched.clear();
    }
  });
  VisitEstimate out;
  out.mean.assign(n, 0.0);
  out.standard_error.assign(n, 0.0);
  const double w = static_cast<double>(count);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0, s2 = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
      s += sum[c][k];
      s2 += sumsq[c][k];
    }
    const double mean = s / w;
    const double var = count > 1 ? std::max(0.0, (s2 - w * mean * mean) / (w - 1.0)) : 0.0;
    out.mean[k] = mean;
    out.standard_error[k] = std::sqrt(var / w);
  }
  return out;
}

GreenTable::GreenTable(const TruncatedChain& chain, std::size_t interior_budget) : chain_(&chain) {
  const std::size_t n = chain.interior().size();
  if (n > interior_budget)
    throw BudgetExceeded("Green function needs " + std::to_string(n) + " interior vertices, budget " +
                         std::to_string(interior_budget));
  Eigen::SparseMatrix<double> id(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  id.setIdentity();
  a_ = id - chain.interior_matrix();
  a_.makeCompressed();
  at_ = a_.transpose();
  at_.makeCompressed();
  lu_.compute(a_);
  if (lu_.info() != Eigen::Success) throw SolverError("sparse LU factorisation of I - Q failed", 0.0);
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lut;
  lut.compute(at_);
  if (lut.info() != Eigen::Success) throw SolverError("sparse LU factorisation of (I - Q)^T failed", 0.0);
  origin_row_ = solve(lut, at_, chain.interior_index(chain.origin()));
}

Eigen::VectorXd GreenTable::solve(Eigen::SparseLU<Eigen::SparseMatrix<double>>& lu,
                                  const Eigen::SparseMatrix<double>& a, int index) const {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(a.rows());
  e(index) = 1.0;
  Eigen::VectorXd x = lu.solve(e);
  const double res = (a * x - e).lpNorm<Eigen::Infinity>();
  residual_ = std::max(residual_, res);
  if (!(res < kSolverTolerance)) throw SolverError("Green function solve residual above tolerance", res);
  return x;
}

const Eigen::VectorXd& GreenTable::column(int y) const {
  const int j = chain_->interior_index(y);
  if (j < 0) throw InvalidArgument("Green columns exist for interior vertices only");
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = columns_.find(j);
  if (it == columns_.end()) it = columns_.emplace(j, solve(lu_, a_, j)).first;
  return it->second;
}

double GreenTable::operator()(int x, int y) const {
  const int i = chain_->interior_index(x);
  if (i < 0 || chain_->interior_index(y) < 0) return 0.0;
  return column(y)(i);
}

double GreenTable::residual() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return residual_;
}

std::vector<double> absorption_distribution(const GreenTable& green) {
  const auto& chain = green.chain();
  std::vector<double> nu(chain.absorbing().size(), 0.0);
  const auto& g = green.origin_row();
  for (std::size_t i = 0; i < chain.interior().size(); ++i) {
    const int x = chain.interior()[i];
    const double p = g(static_cast<Eigen::Index>(i)) / chain.degree(x);
    for (int y : chain.neighbors(x)) {
      const int a = chain.absorbing_index(y);
      if (a >= 0) nu[static_cast<std::size_t>(a)] += p;
    }
  }
  return nu;
}

double martin_kernel(const GreenTable& green, int x, int y) {
  const auto& col = green.column(y);
  const int i = green.chain().interior_index(x);
  if (i < 0) throw InvalidArgument("Martin kernel needs an interior x");
  return col(i) / col(green.chain().interior_index(green.chain().origin()));
}

double naim_kernel(const GreenTable& green, int x, int y) {
  return martin_kernel(green, x, y) / green(x, green.chain().origin());
}

Regression fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  Regression out;
  out.points = x.size();
  if (x.size() != y.size() || x.size() < 2) return out;
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 1e-12 * n) return out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i)
    out.residual_spread = std::max(out.residual_spread, std::abs(y[i] - out.slope * x[i] - out.intercept));
  out.inconclusive = false;
  return out;
}

KernelReport kernel_scaling(const GreenTable& green, std::size_t max_pairs, std::uint64_t seed) {
  const auto& chain = green.chain();
  const auto& g = chain.graph();
  KernelReport out;
  out.branching = g.alphabet > 0 ? g.alphabet : static_cast<int>(g.children(g.root()).size());
  if (out.branching < 2) throw Unsupported("kernel scaling needs at least two branches");
  const double logn = std::log(static_cast<double>(out.branching));
  out.alpha = logn / -std::log(g.base_ratio);

  std::vector<int> pool;
  for (int v : chain.interior())
    if (g.level_of(v) <= chain.horizon() - 2) pool.push_back(v);
  std::vector<std::pair<int, int>> pairs;
  const std::size_t total = pool.size() * (pool.size() - (pool.empty() ? 0 : 1));
  if (max_pairs == 0 || max_pairs >= total) {
    for (int x : pool)
      for (int y : pool)
        if (x != y) pairs.emplace_back(x, y);
  } else {
    for (std::size_t k : detail::sample_indices(total, max_pairs, seed)) {
      const std::size_t i = k / (pool.size() - 1);
      std::size_t j = k % (pool.size() - 1);
      if (j >= i) ++j;
      pairs.emplace_back(pool[i], pool[j]);
    }
    std::sort(pairs.begin(), pairs.end());
  }

  std::map<int, std::vector<int>> dist;
  std::vector<double> mx, my, nx, ny;
  for (const auto& [x, y] : pairs) {
    auto it = dist.find(x);
    if (it == dist.end()) it = dist.emplace(x, bfs_distances(g, x, -1, chain.include_uncertain())).first;
    KernelSample s;
    s.x = x;
    s.y = y;
    s.gromov_twice = g.level_of(x) + g.level_of(y) - it->second[static_cast<std::size_t>(y)];
    s.K = martin_kernel(green, x, y);
    s.theta = s.K / green(x, chain.origin());
    const int exponent = s.gromov_twice - g.level_of(x);
    s.predicted = std::pow(static_cast<double>(out.branching), exponent);
    mx.push_back(exponent * logn);
    my.push_back(std::log(s.K));
    nx.push_back(s.gromov_twice * logn);
    ny.push_back(std::log(s.theta));
    out.samples.push_back(s);
  }
  out.martin = fit_line(mx, my);
  out.naim = fit_line(nx, ny);
  return out;
}

std::vector<double> harmonic_tv(const TruncatedChain& chain, const std::vector<double>& hitting) {
  const auto& g = chain.graph();
  if (hitting.size() != chain.absorbing().size()) throw InvalidArgument("hitting distribution size mismatch");
  std::vector<double> out;
  for (int m = 1; m <= chain.horizon() - 2; ++m) {
    std::map<int, double> mass;
    for (int v : g.level(m)) mass[v] = 0.0;
    for (std::size_t a = 0; a < hitting.size(); ++a) {
      int v = chain.absorbing()[a];
      while (g.level_of(v) > m) v = g.parents(v).front();
      mass[v] += hitting[a];
    }
    const double uniform = 1.0 / static_cast<double>(g.level(m).size());
    double tv = 0.0;
    for (const auto& [v, p] : mass) tv += std::abs(p - uniform);
    out.push_back(0.5 * tv);
  }
  return out;
}

std::optional<double> truncation_delta(const AugmentedGraph& g, int horizon, bool include_uncertain) {
  if (g.depth() < horizon + 2) return std::nullopt;
  const TruncatedChain a(g, horizon, include_uncertain);
  const TruncatedChain b(g, horizon + 2, include_uncertain);
  const GreenTable ga(a);
  const GreenTable gb(b);
  double worst = 0.0;
  for (int v : a.interior()) {
    if (g.level_of(v) > horizon - 2) continue;
    const double x = ga.origin_row()(a.interior_index(v));
    const double y = gb.origin_row()(b.interior_index(v));
    worst = std::max(worst, std::abs(x - y) / std::abs(y));
  }
  return worst;
}

}  // namespace augtree
