#include <cmath>
#include <unordered_map>

#include "augtree/error.hpp"
#include "augtree/tree_builder.hpp"

namespace augtree {

ContractionSpec unit_cube_spec(int dim) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("dimension must be in 1..4");
  std::vector<Generator> gens;
  std::vector<Scalar> identity;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) identity.emplace_back(QuadNumber(i == j ? 1 : 0));
  for (int corner = 0; corner < (1 << dim); ++corner) {
    std::vector<Scalar> t;
    for (int i = 0; i < dim; ++i) t.emplace_back(QuadNumber(mpq_class((corner >> i) & 1, 2)));
    gens.push_back(make_similitude(Scalar(QuadNumber(mpq_class(1, 2))), identity, t));
  }
  return ContractionSpec(dim, std::move(gens), "unit_cube");
}

MoranTree build_moran_tree(const MoranSpec& spec, int depth, std::optional<double> kappa, double epsilon_net,
                           std::size_t budget, int threads) {
  if (depth < 0) throw InvalidArgument("depth must be >= 0");
  if (spec.ratios.empty()) throw InvalidArgument("Moran spec needs at least one ratio");
  if (spec.translations.empty()) throw InvalidArgument("Moran spec needs child placements");
  const int d = spec.dim;
  const std::size_t N = spec.translations.front().size();
  if (N == 0) throw InvalidArgument("Moran levels need at least one child");

  bool exact = true;
  double r = 1.0;
  for (const auto& ratio : spec.ratios) {
    if (!(ratio.value > 0.0 && ratio.value < 1.0)) throw InvalidArgument("Moran ratios must lie in (0,1)");
    if (ratio.value < spec.ratio_floor)
      throw InvalidArgument("Moran ratio " + std::to_string(ratio.value) + " is below the floor " +
                            std::to_string(spec.ratio_floor) + ": inf r_k is not bounded away from 0");
    exact = exact && ratio.is_exact();
    r = std::min(r, ratio.value);
  }

  // One similitude family per level in the cycle.
  std::vector<ContractionSpec> level_specs;
  const std::size_t period = std::max(spec.ratios.size(), spec.translations.size());
  std::vector<Scalar> identity;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) identity.emplace_back(QuadNumber(i == j ? 1 : 0));
  for (std::size_t k = 0; k < period; ++k) {
    const Scalar& rk = spec.ratios[k % spec.ratios.size()];
    const auto& group = spec.translations[k % spec.translations.size()];
    if (group.size() != N) throw InvalidArgument("every Moran level needs the same number of children");
    std::vector<Generator> gens;
    for (const auto& t : group) {
      if (static_cast<int>(t.size()) != d) throw InvalidArgument("Moran placement has the wrong dimension");
      for (const auto& c : t)
        if (c.value < -1e-12 || c.value > 1.0 - rk.value + 1e-12)
          throw InvalidArgument("Moran child is not contained in its parent cell");
      gens.push_back(make_similitude(rk, identity, t));
    }
    level_specs.emplace_back(d, std::move(gens));
  }

  // n(k) = min{ n : r_1 ... r_n <= r^k }.
  std::vector<int> n_of(static_cast<std::size_t>(depth) + 1, 0);
  {
    std::optional<QuadNumber> exact_r;
    if (exact) {
      exact_r = *spec.ratios.front().exact;
      for (const auto& ratio : spec.ratios)
        if (*ratio.exact < *exact_r) exact_r = *ratio.exact;
    }
    QuadNumber P(1);
    QuadNumber rk(1);
    double logP = 0.0;
    int n = 0;
    for (int k = 1; k <= depth; ++k) {
      if (exact) rk *= *exact_r;
      const double log_rk = k * std::log(r);
      while (true) {
        const bool done = exact ? (P <= rk) : (logP <= log_rk + kLevelGuardBand);
        if (done && n > n_of[static_cast<std::size_t>(k) - 1]) break;
        const Scalar& next = spec.ratios[static_cast<std::size_t>(n) % spec.ratios.size()];
        if (exact) P *= *next.exact;
        logP += std::log(next.value);
        ++n;
      }
      n_of[static_cast<std::size_t>(k)] = n;
    }
  }

  MoranTree out;
  out.original_level = n_of;
  out.base_ratio = r;
  AugmentedGraph& g = out.tree.graph;
  g.base_ratio = r;
  g.alphabet = static_cast<int>(N);
  g.dimension = d;
  g.builder = BuilderKind::moran;

  auto root = RootNet::build(unit_cube_spec(d), epsilon_net);
  const double kap = kappa ? *kappa : 0.1 * root->diameter().lo;
  out.report.kappa = kap;
  out.report.epsilon_net = root->epsilon();
  out.report.root_diameter = root->diameter();

  struct Item {
    Word w;
    ComposedMap map;
    int id;
  };
  std::vector<Item> current;
  {
    Vertex v;
    v.words = {Word{}};
    const int id = g.add_vertex(std::move(v));
    current.push_back({Word{}, identity_map(d), id});
    out.tree.cells.push_back(build_cell(identity_map(d), root));
  }
  std::size_t used = 1;
  for (int k = 1; k <= depth; ++k) {
    const int from = n_of[static_cast<std::size_t>(k) - 1];
    const int to = n_of[static_cast<std::size_t>(k)];
    std::vector<Item> next;
    for (const auto& item : current) {
      std::vector<Item> frontier{item};
      for (int n = from; n < to; ++n) {
        const auto& ls = level_specs[static_cast<std::size_t>(n) % period];
        std::vector<Item> grown;
        for (const auto& f : frontier)
          for (std::size_t j = 0; j < N; ++j)
            grown.push_back({f.w.extended(static_cast<Letter>(j)), extend(f.map, static_cast<Letter>(j), ls), f.id});
        frontier = std::move(grown);
        if (used + frontier.size() > budget)
          throw BudgetExceeded("Moran tree exceeds the vertex budget of " + std::to_string(budget));
      }
      for (auto& f : frontier) {
        Vertex v;
        v.level = k;
        v.words = {f.w};
        const int id = g.add_vertex(std::move(v));
        g.add_vertical(item.id, id);
        out.tree.cells.push_back(build_cell(f.map, root));
        ++used;
        next.push_back({std::move(f.w), std::move(f.map), id});
      }
    }
    current = std::move(next);
  }

  const auto stats = build_horizontal_edges(g, out.tree.cells, kap, threads);
  out.report.uncertain_edges = stats.uncertain;
  out.report.pre_augmented = verify_pre_augmented(g);
  out.report.delta0 = a2_constant(g, out.tree.cells);
  out.report.exact_levels = exact;
  g.validate();
  return out;
}

}  // namespace augtree
