// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <unistd.h>

#include "augtree/error.hpp"
#include "augtree/fingerprint.hpp"
#include "augtree/library.hpp"
#include "augtree/lipschitz.hpp"
#include "augtree/metric.hpp"
#include "augtree/pipeline.hpp"
#include "augtree/randwalk.hpp"
#include "augtree/separation.hpp"
#include "augtree/tree_builder.hpp"
#include "builders.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using namespace augtree;
using augtree::testing::build_builtin;

namespace {

// Tolerances and limits.
constexpr double kCoincidenceSeconds = 1.0;
constexpr double kDichotomySeconds = 60.0;
constexpr double kHolderDrift = 0.10;
constexpr double kHarmonicTv = 0.05;
constexpr double kSigmas = 3.0;
constexpr double kHarmonicSeconds = 120.0;
constexpr double kSlopeLo = 0.85;
constexpr double kSlopeHi = 1.15;
constexpr std::uint64_t kWalks = 1'000'000;
constexpr std::uint64_t kSeed = 7;
constexpr double kHolderA = 0.2;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

int max_degree(const AugmentedGraph& g) { return degree_profile(g).max_degree; }

// Max degree over levels 0..depth with every one of those vertices complete:
// the graph is built one level deeper so level `depth` keeps its children.
int max_degree_through(const IfsTree& deeper, bool quotient, int depth) {
  const auto prof = degree_profile(quotient ? deeper.quotient->graph : deeper.raw.graph);
  int m = 0;
  for (const auto& l : prof.levels)
    if (l.level <= depth) m = std::max(m, l.max_degree);
  return m;
}

const std::vector<std::string> kOsc = {"cantor", "unit_interval", "sierpinski"};

Outcome golden_coincidence() {
  const auto t0 = Clock::now();
  const auto spec = builtin_ifs("golden");
  const auto a = fingerprint(Word::parse("011"), spec);
  const auto b = fingerprint(Word::parse("100"), spec);
  const auto c = fingerprint(Word::parse("010"), spec);
  const double dt = seconds_since(t0);
  const bool ok = spec.exact() && !a.heuristic && a == b && !(a == c) && dt < kCoincidenceSeconds;
  return {ok, "exact=" + std::to_string(spec.exact()) + " equal=" + std::to_string(a == b) + " t=" + fmt(dt) + "s"};
}

Outcome osc_wsc_dichotomy() {
  std::vector<int> raw, quo, truncated, bound;
  double t12 = 0.0;
  bool ok = true;
  for (int depth : {3, 6, 9, 12}) {
    const auto t0 = Clock::now();
    const auto tree = build_builtin("golden", depth, std::nullopt, true);
    if (depth == 12) t12 = seconds_since(t0);
    truncated.push_back(max_degree(tree.quotient->graph));
    const auto deeper = build_builtin("golden", depth + 1, std::nullopt, true);
    raw.push_back(max_degree_through(deeper, false, depth));
    quo.push_back(max_degree_through(deeper, true, depth));
    bound.push_back((1 << (depth / 3)) - 1);
    ok = ok && raw.back() >= bound.back();
  }
  ok = ok && std::all_of(quo.begin(), quo.end(), [&](int d) { return d == quo.front(); }) && t12 < kDichotomySeconds;
  return {ok, "raw=" + join(raw) + " bound=" + join(bound) + " quotient=" + join(quo) +
                  " quotient_truncated=" + join(truncated) + " t12=" + fmt(t12) + "s"};
}

Outcome bounded_degree() {
  bool ok = true;
  std::string detail;
  for (const auto& name : kOsc) {
    std::vector<int> deg;
    for (int depth = 4; depth <= 10; ++depth)
      deg.push_back(max_degree_through(build_builtin(name, depth + 1), false, depth));
    ok = ok && std::all_of(deg.begin(), deg.end(), [&](int d) { return d == deg.front(); });
    detail += name + "=" + join(deg) + " ";
  }
  return {ok, detail};
}

Outcome hyperbolicity() {
  bool ok = true;
  std::string detail;
  for (const auto& name : kOsc) {
    std::vector<int> l;
    for (int depth = 4; depth <= 8; ++depth) l.push_back(horizontal_geodesic_bound(build_builtin(name, depth).raw.graph).max);
    ok = ok && std::all_of(l.begin(), l.end(), [&](int x) { return x == l.front(); });
    detail += "L_" + name + "=" + join(l) + " ";
  }
  std::vector<double> cantor, unit;
  for (int depth = 1; depth <= 6; ++depth) {
    cantor.push_back(hyperbolicity_delta(build_builtin("cantor", depth).raw.graph, DeltaMode::exhaustive).delta);
    if (depth >= 4)
      unit.push_back(hyperbolicity_delta(build_builtin("unit_interval", depth).raw.graph, DeltaMode::exhaustive).delta);
  }
  ok = ok && std::all_of(cantor.begin(), cantor.end(), [](double d) { return d == 0.0; });
  ok = ok && std::all_of(unit.begin(), unit.end(), [&](double d) { return d == unit.front(); });
  detail += "delta_cantor_max=" + fmt(*std::max_element(cantor.begin(), cantor.end()));
  detail += " delta_unit(4..6)=" + fmt(unit[0]) + "," + fmt(unit[1]) + "," + fmt(unit[2]);
  return {ok, detail};
}

Outcome gromov_consistency() {
  std::size_t pairs = 0, agree = 0;
  for (const auto& name : kOsc) {
    const auto g = build_builtin(name, 6).raw.graph;
    for (int n = 0; n <= g.depth(); ++n) {
      const auto& lv = g.level(n);
      for (int x : lv) {
        const auto d = bfs_distances(g, x);
        for (int y : lv) {
          const int def = 2 * n - d[static_cast<std::size_t>(y)];
          const int eq = canonical_geodesic(g, x, y).gromov_twice();
          ++pairs;
          agree += def == eq;
        }
      }
    }
  }
  return {pairs > 0 && agree == pairs, std::to_string(agree) + "/" + std::to_string(pairs) + " same-level pairs"};
}

Outcome geodesic_oracle() {
  std::size_t pairs = 0, agree = 0;
  for (const auto& name : kOsc) {
    const auto g = build_builtin(name, 5).raw.graph;
    const int n = static_cast<int>(g.size());
    for (int x = 0; x < n; ++x) {
      const auto d = bfs_distances(g, x);
      for (int y = 0; y < n; ++y) {
        ++pairs;
        agree += canonical_geodesic(g, x, y).total_length == d[static_cast<std::size_t>(y)];
      }
    }
  }
  return {pairs > 0 && agree == pairs, std::to_string(agree) + "/" + std::to_string(pairs) + " vertex pairs"};
}

// Exact left endpoint S_x(0) of a cell: sum of digit * t * r^i, computed in Q.
mpq_class symbolic_point(const Word& w, const mpq_class& r, const mpq_class& t) {
  mpq_class x = 0, scale = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    x += scale * t * w[i];
    scale *= r;
  }
  return x;
}

struct RatioRange {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t pairs = 0;
  double C() const { return std::max(hi, 1.0 / lo); }
};

std::size_t common_prefix(const Word& a, const Word& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return k;
}

// Ratios r^{|x∧y|} / |iota(x) - iota(y)| over resolvable deepest-level pairs,
// with exact endpoints and the cut at `floor_cells` cell widths. On a tree
// the Gromov product is the common prefix length; otherwise it comes from BFS.
RatioRange symbolic_ratios(const AugmentedGraph& g, const mpq_class& r, const mpq_class& t, double floor_cells,
                           bool tree) {
  const int n = g.depth();
  const auto& lv = g.level(n);
  const double width = std::pow(r.get_d(), n);
  std::vector<mpq_class> pts;
  for (int v : lv) pts.push_back(symbolic_point(g.vertex(v).words.front(), r, t));
  RatioRange out{1e300, 0.0, 0};
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const auto d = tree ? std::vector<int>{} : bfs_distances(g, lv[i]);
    for (std::size_t j = i + 1; j < lv.size(); ++j) {
      const mpq_class diff = abs(pts[i] - pts[j]);
      if (diff.get_d() < floor_cells * width) continue;
      const double gromov =
          tree ? static_cast<double>(common_prefix(g.vertex(lv[i]).words.front(), g.vertex(lv[j]).words.front()))
               : 0.5 * (2 * n - d[static_cast<std::size_t>(lv[j])]);
      const double ratio = std::pow(r.get_d(), gromov) / diff.get_d();
      out.lo = std::min(out.lo, ratio);
      out.hi = std::max(out.hi, ratio);
      ++out.pairs;
    }
  }
  return out;
}

Outcome holder() {
  struct Case {
    std::string name;
    mpq_class r, t;       // S_1(x) = r x + t
    double floor_cells;   // library floor is 2 (diameter + net error); pair gaps sit well clear of it
    bool tree;
  };
  const std::vector<Case> cases = {{"cantor", mpq_class(1, 3), mpq_class(2, 3), 3.0, true},
                                   {"unit_interval", mpq_class(1, 2), mpq_class(1, 2), 2.5, false}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    double c6 = 0.0, c8 = 0.0;
    for (int depth : {6, 8}) {
      const auto tree = build_builtin(c.name, depth);
      const auto& g = tree.raw.graph;
      const auto lib = holder_distortion(g, tree.raw.cells, VisualMetricParams{kHolderA});
      const auto oracle = symbolic_ratios(g, c.r, c.t, c.floor_cells, c.tree);
      const bool match = !lib.inconclusive && lib.pairs == oracle.pairs &&
                         std::abs(lib.min_ratio - oracle.lo) <= 1e-9 * oracle.lo &&
                         std::abs(lib.max_ratio - oracle.hi) <= 1e-9 * oracle.hi &&
                         lib.equivalence_violations == 0;
      ok = ok && match;
      (depth == 6 ? c6 : c8) = oracle.C();
      detail += c.name + "@" + std::to_string(depth) + ":C=" + fmt(oracle.C(), 6) + (match ? "" : "(mismatch)") + " ";
    }
    const double drift = std::abs(c8 - c6) / c6;
    ok = ok && drift < kHolderDrift;
    detail += "drift=" + fmt(drift, 3) + " ";
  }
  return {ok, detail};
}

Outcome harmonic_measure() {
  const auto t0 = Clock::now();
  const auto tree = build_builtin("cantor", 6);
  const TruncatedChain chain(tree.raw.graph, 6);
  const auto hits = simulate_walks(chain, kWalks, kSeed);
  const auto freq = hits.frequencies();
  const auto tv = harmonic_tv(chain, freq);
  const GreenTable green(chain);
  const auto nu = absorption_distribution(green);
  double worst_z = 0.0;
  bool within = hits.censored == 0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    const double sigma = std::sqrt(nu[i] * (1.0 - nu[i]) / static_cast<double>(hits.walks));
    const double z = sigma > 0 ? std::abs(freq[i] - nu[i]) / sigma : (freq[i] == nu[i] ? 0.0 : 1e9);
    worst_z = std::max(worst_z, z);
    within = within && z <= kSigmas;
  }
  const double dt = seconds_since(t0);
  const double tv4 = tv.at(3);
  const bool ok = tv4 <= kHarmonicTv && within && dt < kHarmonicSeconds;
  return {ok, "TV(m=4)=" + fmt(tv4) + " max_z=" + fmt(worst_z, 3) + " t=" + fmt(dt, 3) + "s"};
}

Outcome martin_scaling() {
  const auto tree = build_builtin("cantor", 8);
  const TruncatedChain chain(tree.raw.graph, 8);
  const GreenTable green(chain);
  const auto rep = kernel_scaling(green);
  const bool ok = !rep.martin.inconclusive && rep.martin.slope >= kSlopeLo && rep.martin.slope <= kSlopeHi &&
                  green.residual() < kSolverTolerance;
  return {ok, "slope=" + fmt(rep.martin.slope) + " pairs=" + std::to_string(rep.samples.size()) +
                  " residual=" + fmt(green.residual(), 2)};
}

Outcome lipschitz() {
  bool ok = true;
  std::string detail;

  const auto cantor = build_builtin("cantor", 7).raw.graph;
  const auto rc = simplicity_report(cantor);
  const bool one = rc.simple_evidence && rc.class_counts.front() == 1 && rc.incidence &&
                   rc.incidence->a == std::vector<std::vector<std::int64_t>>{{2}};
  ok = ok && one;
  detail += "cantor:classes=" + join(rc.class_counts) + (one ? " A=[2]" : " A?") + " ";

  const auto unit = build_builtin("unit_interval", 8).raw.graph;
  const auto ru = simplicity_report(unit);
  const auto& cum = ru.cumulative.front();
  const bool growing = !ru.simple_evidence && cum.back() > cum[cum.size() / 2];
  ok = ok && growing;
  detail += "unit:cumulative=" + join(cum) + " ";

  const auto fixture = augtree::testing::two_class_fixture(8);
  const auto rf = simplicity_report(fixture);
  const std::vector<std::vector<std::int64_t>> expected{{0, 1}, {2, 0}};
  const bool stable = rf.simple_evidence && rf.class_counts.front() == 2 && rf.incidence && rf.incidence->a == expected;
  ok = ok && stable;
  detail += "fixture:classes=" + join(rf.class_counts) + (stable ? " A=[[0,1],[2,0]]" : " A?");
  return {ok, detail};
}

Outcome diamond() {
  bool ok = true;
  std::vector<int> div;
  std::size_t checked = 0;
  for (int depth = 1; depth <= 6; ++depth) {
    const auto g = build_builtin("unit_interval", depth, 0.6, false, true).raw.graph;
    const auto rep = verify_diamond(g);
    checked += rep.two_paths_checked;
    ok = ok && rep.ok() && (g.slanted_edge_count() > 0) == (depth >= 2);
    const auto prof = divergence_profile(g);
    div.push_back(*std::max_element(prof.begin(), prof.end()));
  }
  // Stable once the bridges exist: the tail of the sequence is constant.
  ok = ok && div[3] == div[4] && div[4] == div[5];
  return {ok, "two_paths=" + std::to_string(checked) + " divergence(1..6)=" + join(div)};
}

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    out[fs::relative(e.path(), dir).string()] = s.str();
  }
  return out;
}

Outcome determinism() {
  const fs::path cfg = fs::path(AUGTREE_SOURCE_DIR) / "configs" / "cantor.cfg";
  const fs::path tmp = fs::temp_directory_path() / ("augtree_accept_" + std::to_string(::getpid()));
  fs::remove_all(tmp);
  for (const char* run : {"a", "b"}) write_artifacts(run_all(load_config(cfg)), tmp / run);
  const auto a = read_tree(tmp / "a");
  const auto b = read_tree(tmp / "b");
  fs::remove_all(tmp);
  return {!a.empty() && a == b, std::to_string(a.size()) + " files, identical=" + std::to_string(a == b)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden-coincidence", golden_coincidence},
      {"osc-wsc-dichotomy", osc_wsc_dichotomy},
      {"bounded-degree", bounded_degree},
      {"hyperbolicity", hyperbolicity},
      {"gromov-consistency", gromov_consistency},
      {"canonical-geodesic", geodesic_oracle},
      {"holder-distortion", holder},
      {"harmonic-measure", harmonic_measure},
      {"martin-scaling", martin_scaling},
      {"lipschitz-pipeline", lipschitz},
      {"diamond-graph", diamond},
      {"determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    while (!o.detail.empty() && o.detail.back() == ' ') o.detail.pop_back();
    failed += !o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
