#include "augtree/ifs.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "augtree/error.hpp"

namespace augtree {
namespace {

constexpr double kOrthTolerance = 1e-9;

void check_letter(Letter i, const ContractionSpec& spec) {
  if (spec.size() == 0) throw InvalidArgument("empty contraction spec");
  if (i >= spec.size())
    throw InvalidArgument("letter " + std::to_string(i) + " out of range for " + std::to_string(spec.size()) +
                          " generators");
}

int square_dim(std::size_t entries) {
  for (int d = 1; d <= kMaxDim; ++d)
    if (static_cast<std::size_t>(d * d) == entries) return d;
  throw InvalidArgument("matrix with " + std::to_string(entries) + " entries is not square of size <= 4");
}

bool all_exact(const std::vector<Scalar>& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_exact(); });
}

Vec to_vec(const std::vector<Scalar>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].value;
  return out;
}

Mat to_mat(const std::vector<Scalar>& rows, int d) {
  Mat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rows[static_cast<std::size_t>(i * d + j)].value;
  return m;
}

}  // namespace

ExactAffine ExactAffine::identity(int dim) {
  ExactAffine a;
  a.dim = dim;
  a.linear.assign(static_cast<std::size_t>(dim * dim), QuadNumber(0));
  a.translation.assign(static_cast<std::size_t>(dim), QuadNumber(0));
  for (int i = 0; i < dim; ++i) a.linear[static_cast<std::size_t>(i * dim + i)] = QuadNumber(1);
  return a;
}

ExactAffine ExactAffine::then(const ExactAffine& o) const {
  // (L1, t1) ∘ (L2, t2) = (L1 L2, L1 t2 + t1)
  ExactAffine out;
  out.dim = dim;
  out.linear.assign(linear.size(), QuadNumber(0));
  out.translation = translation;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      QuadNumber s(0);
      for (int k = 0; k < dim; ++k) s += at(i, k) * o.at(k, j);
      out.linear[static_cast<std::size_t>(i * dim + j)] = s;
    }
    for (int k = 0; k < dim; ++k) out.translation[static_cast<std::size_t>(i)] += at(i, k) * o.translation[static_cast<std::size_t>(k)];
  }
  return out;
}

Vec Generator::apply(const Vec& p) const {
  if (kind == MapKind::general) return evaluator(p);
  return linear * p + translation;
}

Generator make_similitude(const Scalar& ratio, const std::vector<Scalar>& orthogonal_rows,
                          const std::vector<Scalar>& translation) {
  const int d = static_cast<int>(translation.size());
  if (d < 1 || d > kMaxDim) throw InvalidArgument("dimension must be in 1..4");
  std::vector<Scalar> orth = orthogonal_rows;
  if (orth.empty()) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) orth.emplace_back(QuadNumber(i == j ? 1 : 0));
  }
  if (square_dim(orth.size()) != d) throw InvalidArgument("orthogonal part does not match translation dimension");
  if (!(ratio.value > 0.0 && ratio.value < 1.0)) throw InvalidArgument("similitude ratio must lie in (0,1)");

  Mat o = to_mat(orth, d);
  if (((o * o.transpose()) - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > kOrthTolerance)
    throw InvalidArgument("orthogonal part is not orthogonal");

  Generator g;
  g.kind = MapKind::similitude;
  g.linear = ratio.value * o;
  g.translation = to_vec(translation);
  g.min_ratio = g.max_ratio = ratio.value;

  if (ratio.is_exact() && all_exact(orth) && all_exact(translation)) {
    ExactAffine e;
    e.dim = d;
    for (const auto& s : orth) e.linear.push_back(*ratio.exact * *s.exact);
    for (const auto& s : translation) e.translation.push_back(*s.exact);
    // O O^T = I must hold exactly.
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        QuadNumber s(0);
        for (int k = 0; k < d; ++k)
          s += *orth[static_cast<std::size_t>(i * d + k)].exact * *orth[static_cast<std::size_t>(j * d + k)].exact;
        if (s != QuadNumber(i == j ? 1 : 0)) throw InvalidArgument("exact orthogonal part is not orthogonal");
      }
    g.exact_ratio = *ratio.exact;
    g.exact = std::move(e);
  }
  return g;
}

Generator make_similitude(double ratio, const Mat& orthogonal, const Vec& translation) {
  std::vector<Scalar> rows;
  for (Eigen::Index i = 0; i < orthogonal.rows(); ++i)
    for (Eigen::Index j = 0; j < orthogonal.cols(); ++j) rows.emplace_back(orthogonal(i, j));
  std::vector<Scalar> t;
  for (Eigen::Index i = 0; i < translation.size(); ++i) t.emplace_back(translation(i));
  return make_similitude(Scalar(ratio), rows, t);
}

Generator make_affine(const std::vector<Scalar>& linear_rows, const std::vector<Scalar>& translation,
                      double min_ratio, double max_ratio) {
  const int d = static_cast<int>(translation.size());
  if (d < 1 || d > kMaxDim) throw InvalidArgument("dimension must be in 1..4");
  if (square_dim(linear_rows.size()) != d) throw InvalidArgument("linear part does not match translation dimension");
  if (!(min_ratio > 0.0 && min_ratio <= max_ratio && max_ratio < 1.0))
    throw InvalidArgument("affine bounds must satisfy 0 < r <= R < 1");

  Generator g;
  g.kind = MapKind::affine;
  g.linear = to_mat(linear_rows, d);
  g.translation = to_vec(translation);
  g.min_ratio = min_ratio;
  g.max_ratio = max_ratio;

  Eigen::JacobiSVD<Mat> svd(g.linear);
  const auto& s = svd.singularValues();
  if (s.maxCoeff() > max_ratio * (1 + 1e-12) || s.minCoeff() < min_ratio * (1 - 1e-12))
    throw InvalidArgument("declared bounds do not contain the singular values of the linear part");

  if (all_exact(linear_rows) && all_exact(translation)) {
    ExactAffine e;
    e.dim = d;
    for (const auto& v : linear_rows) e.linear.push_back(*v.exact);
    for (const auto& v : translation) e.translation.push_back(*v.exact);
    g.exact = std::move(e);
  }
  return g;
}

Generator make_general(int dim, PointMap evaluator, double min_ratio, double max_ratio) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("dimension must be in 1..4");
  if (!evaluator) throw InvalidArgument("general contraction needs an evaluator");
  if (!(min_ratio > 0.0 && min_ratio <= max_ratio && max_ratio < 1.0))
    throw InvalidArgument("contraction bounds must satisfy 0 < r <= R < 1");
  Generator g;
  g.kind = MapKind::general;
  g.linear = Mat::Zero(dim, dim);
  g.translation = Vec::Zero(dim);
  g.min_ratio = min_ratio;
  g.max_ratio = max_ratio;
  g.evaluator = std::move(evaluator);
  return g;
}

ContractionSpec::ContractionSpec(int dim, std::vector<Generator> generators, std::string name)
    : dim_(dim), name_(std::move(name)) {
  if (generators.empty()) throw InvalidArgument("empty contraction spec");
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("dimension must be in 1..4");
  if (generators.size() > kMaxAlphabet) throw InvalidArgument("at most 36 generators are supported");
  for (const auto& g : generators) {
    if (!(g.min_ratio > 0.0 && g.min_ratio <= g.max_ratio && g.max_ratio < 1.0))
      throw InvalidArgument("generator bounds must satisfy 0 < r <= R < 1");
    if (g.kind != MapKind::general && (g.linear.rows() != dim || g.translation.size() != dim))
      throw InvalidArgument("generator dimension mismatch");
  }

  exact_ = std::all_of(generators.begin(), generators.end(), [](const Generator& g) { return g.exact.has_value(); });
  all_similitudes_ =
      std::all_of(generators.begin(), generators.end(), [](const Generator& g) { return g.kind == MapKind::similitude; });
  affine_ = std::all_of(generators.begin(), generators.end(), [](const Generator& g) { return g.is_affine(); });

  r_ = generators.front().min_ratio;
  R_ = generators.front().max_ratio;
  for (const auto& g : generators) {
    r_ = std::min(r_, g.min_ratio);
    R_ = std::max(R_, g.max_ratio);
  }

  const bool exact_ratios = all_similitudes_ && std::all_of(generators.begin(), generators.end(),
                                                            [](const Generator& g) { return g.exact_ratio.has_value(); });
  if (exact_ratios) {
    QuadNumber r = *generators.front().exact_ratio;
    bool equal = true;
    for (const auto& g : generators) {
      if (*g.exact_ratio != r) equal = false;
      if (*g.exact_ratio < r) r = *g.exact_ratio;
    }
    exact_r_ = r;
    equicontractive_ = equal;
  } else if (all_similitudes_) {
    equicontractive_ = std::all_of(generators.begin(), generators.end(),
                                   [&](const Generator& g) { return g.min_ratio == generators.front().min_ratio; });
  }

  for (const auto& g : generators) {
    if (g.is_affine()) {
      Mat a = Mat::Identity(dim, dim) - g.linear;
      fixed_.push_back(a.fullPivLu().solve(g.translation));
    } else {
      Vec p = Vec::Zero(dim);
      for (int it = 0; it < 10000; ++it) {
        Vec q = g.evaluator(p);
        const double step = (q - p).norm();
        p = q;
        if (step <= 1e-15 * (1.0 + p.norm())) break;
      }
      fixed_.push_back(p);
    }
  }
  gens_ = std::make_shared<const std::vector<Generator>>(std::move(generators));
}

Vec ComposedMap::apply(const Vec& p) const {
  if (affine) return linear * p + translation;
  Vec q = p;
  for (std::size_t k = word.size(); k-- > 0;) q = (*generators)[word[k]].apply(q);
  return q;
}

ComposedMap identity_map(int dim) {
  ComposedMap m;
  m.linear = Mat::Identity(dim, dim);
  m.translation = Vec::Zero(dim);
  return m;
}

ComposedMap extend(const ComposedMap& w, Letter i, const ContractionSpec& spec) {
  check_letter(i, spec);
  const Generator& g = spec[i];
  ComposedMap out;
  out.min_ratio = w.min_ratio * g.min_ratio;
  out.max_ratio = w.max_ratio * g.max_ratio;
  out.affine = spec.affine();
  if (out.affine) {
    out.linear = w.linear * g.linear;
    out.translation = w.linear * g.translation + w.translation;
  } else {
    out.linear = Mat::Zero(spec.dim(), spec.dim());
    out.translation = Vec::Zero(spec.dim());
    out.word = w.word.extended(i);
    out.generators = spec.shared_generators();
  }
  return out;
}

ComposedMap compose(const Word& w, const ContractionSpec& spec) {
  if (spec.size() == 0) throw InvalidArgument("empty contraction spec");
  ComposedMap m = identity_map(spec.dim());
  for (Letter l : w.letters()) m = extend(m, l, spec);
  return m;
}

ExactAffine extend_exact(const ExactAffine& w, Letter i, const ContractionSpec& spec) {
  check_letter(i, spec);
  if (!spec[i].exact) throw InvalidArgument("generator " + std::to_string(i) + " has no exact form");
  return w.then(*spec[i].exact);
}

ExactAffine compose_exact(const Word& w, const ContractionSpec& spec) {
  if (spec.size() == 0) throw InvalidArgument("empty contraction spec");
  if (!spec.exact()) throw InvalidArgument("spec has inexact parameters");
  ExactAffine m = ExactAffine::identity(spec.dim());
  for (Letter l : w.letters()) m = extend_exact(m, l, spec);
  return m;
}

QuadNumber exact_ratio(const Word& w, const ContractionSpec& spec) {
  QuadNumber r(1);
  for (Letter l : w.letters()) {
    check_letter(l, spec);
    if (!spec[l].exact_ratio) throw InvalidArgument("generator " + std::to_string(l) + " has no exact ratio");
    r *= *spec[l].exact_ratio;
  }
  return r;
}

}  // namespace augtree
