#include <algorithm>
#include <cmath>

#include "augtree/error.hpp"
#include "augtree/metric.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace augtree {

DeltaEstimate hyperbolicity_delta(const AugmentedGraph& g, DeltaMode mode, std::size_t samples, std::uint64_t seed,
                                  bool include_uncertain, int threads) {
  DeltaEstimate out;
  out.mode = mode;
  out.seed = seed;
  if (g.size() == 0) return out;
  std::vector<std::size_t> pick;
  if (mode == DeltaMode::exhaustive) {
    if (g.size() > kExhaustiveDeltaLimit)
      throw BudgetExceeded("exhaustive delta is limited to " + std::to_string(kExhaustiveDeltaLimit) + " vertices");
    pick = detail::sample_indices(g.size(), g.size(), seed);
  } else {
    if (samples == 0) throw InvalidArgument("sampled delta needs a positive sample count");
    pick = detail::sample_indices(g.size(), samples, seed);
  }
  const std::size_t k = pick.size();
  out.vertices = k;

  // gp[i][j] = 2 |x_i ∧ x_j|, over unrestricted graph distances.
  std::vector<std::vector<int>> gp(k, std::vector<int>(k, 0));
  detail::parallel_chunks(k, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i) {
      const int x = static_cast<int>(pick[i]);
      const auto dist = bfs_distances(g, x, -1, include_uncertain);
      for (std::size_t j = 0; j < k; ++j) {
        const int y = static_cast<int>(pick[j]);
        const int d = dist[static_cast<std::size_t>(y)];
        if (d < 0) throw InternalError("graph is disconnected");
        gp[i][j] = g.level_of(x) + g.level_of(y) - d;
      }
    }
  });

  const std::size_t chunks = detail::chunk_count(k, threads);
  std::vector<int> best(chunks, 0);
  std::vector<std::array<int, 3>> witness(chunks, {-1, -1, -1});
  detail::parallel_chunks(k, threads, [&](std::size_t begin, std::size_t end, std::size_t c) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = i; j < k; ++j) {
        const auto& gi = gp[i];
        const auto& gj = gp[j];
        for (std::size_t z = 0; z < k; ++z) {
          const int excess = std::min(gi[z], gj[z]) - gi[j];
          if (excess > best[c]) {
            best[c] = excess;
            witness[c] = {static_cast<int>(pick[i]), static_cast<int>(pick[j]), static_cast<int>(pick[z])};
          }
        }
      }
  });
  int b = 0;
  for (std::size_t c = 0; c < chunks; ++c)
    if (best[c] > b) {
      b = best[c];
      out.witness = witness[c];
    }
  out.delta = 0.5 * b;
  out.triples = k * k * (k + 1) / 2;
  return out;
}

DeltaEstimate hyperbolicity_delta(const AugmentedGraph& g, std::size_t samples, std::uint64_t seed,
                                  bool include_uncertain, int threads) {
  if (g.size() <= kExhaustiveDeltaLimit)
    return hyperbolicity_delta(g, DeltaMode::exhaustive, 0, seed, include_uncertain, threads);
  return hyperbolicity_delta(g, DeltaMode::sampled, samples == 0 ? kExhaustiveDeltaLimit : samples, seed,
                             include_uncertain, threads);
}

double VisualMetricParams::beta(double r) const {
  if (!(a > 0.0)) throw InvalidArgument("visual metric parameter a must be positive");
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("contraction ratio must lie in (0, 1)");
  return -std::log(r) / a;
}

bool VisualMetricParams::admissible(double delta) const { return std::exp(3.0 * delta * a) < std::sqrt(2.0); }

double visual_metric(const AugmentedGraph& g, const VisualMetricParams& params, int x, int y) {
  if (!(params.a > 0.0)) throw InvalidArgument("visual metric parameter a must be positive");
  if (x == y) return 0.0;
  return std::exp(-params.a * gromov_product(g, x, y));
}

QuasiMetricConstant quasi_metric_constant(const AugmentedGraph& g, const VisualMetricParams& params,
                                          std::size_t samples, std::uint64_t seed, int threads) {
  if (!(params.a > 0.0)) throw InvalidArgument("visual metric parameter a must be positive");
  QuasiMetricConstant out;
  out.scan = hyperbolicity_delta(g, samples, seed, true, threads);
  // rho(x,y) / max(rho(x,z), rho(z,y)) = exp(a (min(gxz, gzy) - gxy)), so the
  // worst triple is the delta witness.
  out.C = std::exp(params.a * out.scan.delta);
  out.admissible = params.admissible(out.scan.delta);
  return out;
}

}  // namespace augtree
