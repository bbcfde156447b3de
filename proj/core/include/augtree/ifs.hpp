#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "augtree/quadratic.hpp"
#include "augtree/scalar.hpp"
#include "augtree/word.hpp"

namespace augtree {

inline constexpr int kMaxDim = 4;

// Fixed-capacity storage: no heap traffic for points and maps.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// Affine map x -> L x + t with entries in Q or Q(sqrt D). L is row-major.
struct ExactAffine {
  int dim = 0;
  std::vector<QuadNumber> linear;
  std::vector<QuadNumber> translation;

  static ExactAffine identity(int dim);
  const QuadNumber& at(int row, int col) const { return linear[static_cast<std::size_t>(row * dim + col)]; }
  /// this ∘ other
  ExactAffine then(const ExactAffine& other) const;
  friend bool operator==(const ExactAffine&, const ExactAffine&) = default;
};

enum class MapKind { similitude, affine, general };

using PointMap = std::function<Vec(const Vec&)>;

struct Generator {
  MapKind kind = MapKind::similitude;
  Mat linear;  // ratio * orthogonal part for similitudes; unused for general maps
  Vec translation;
  double min_ratio = 0.0;  // r_i: |S x - S y| >= r_i |x - y|
  double max_ratio = 0.0;  // R_i: |S x - S y| <= R_i |x - y|
  std::optional<QuadNumber> exact_ratio;  // similitudes with exact parameters
  std::optional<ExactAffine> exact;
  PointMap evaluator;  // general maps only

  Vec apply(const Vec& p) const;
  bool is_affine() const { return kind != MapKind::general; }
};

/// Similitude x -> ratio * O x + t. Exact when every scalar is exact.
Generator make_similitude(const Scalar& ratio, const std::vector<Scalar>& orthogonal_rows,
                          const std::vector<Scalar>& translation);
Generator make_similitude(double ratio, const Mat& orthogonal, const Vec& translation);
/// Affine contraction with caller-certified bounds r <= sigma_min(L), sigma_max(L) <= R.
Generator make_affine(const std::vector<Scalar>& linear_rows, const std::vector<Scalar>& translation,
                      double min_ratio, double max_ratio);
/// Arbitrary contraction supplied as a callable, with certified bi-Lipschitz bounds.
Generator make_general(int dim, PointMap evaluator, double min_ratio, double max_ratio);

class ContractionSpec {
 public:
  ContractionSpec() = default;
  /// Throws InvalidArgument on an empty list, bad dimension, or inconsistent bounds.
  ContractionSpec(int dim, std::vector<Generator> generators, std::string name = {});

  int dim() const { return dim_; }
  std::size_t size() const { return gens_ ? gens_->size() : 0; }
  const Generator& operator[](std::size_t i) const { return (*gens_)[i]; }
  const std::vector<Generator>& generators() const { return *gens_; }
  std::shared_ptr<const std::vector<Generator>> shared_generators() const { return gens_; }
  const std::string& name() const { return name_; }

  bool exact() const { return exact_; }
  bool all_similitudes() const { return all_similitudes_; }
  bool affine() const { return affine_; }
  bool equicontractive() const { return equicontractive_; }

  double min_ratio() const { return r_; }  // r = min r_i
  double max_ratio() const { return R_; }  // R = max R_i
  /// Exact r when every generator is an exact similitude.
  const std::optional<QuadNumber>& exact_min_ratio() const { return exact_r_; }

  const std::vector<Vec>& fixed_points() const { return fixed_; }

 private:
  int dim_ = 0;
  std::shared_ptr<const std::vector<Generator>> gens_;
  std::string name_;
  bool exact_ = false;
  bool all_similitudes_ = false;
  bool affine_ = false;
  bool equicontractive_ = false;
  double r_ = 0.0;
  double R_ = 0.0;
  std::optional<QuadNumber> exact_r_;
  std::vector<Vec> fixed_;
};

/// S_w together with its contraction bounds (r_w, R_w).
struct ComposedMap {
  Mat linear;
  Vec translation;
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  bool affine = true;
  // Non-affine maps are evaluated letter by letter.
  Word word;
  std::shared_ptr<const std::vector<Generator>> generators;

  Vec apply(const Vec& p) const;
};

ComposedMap identity_map(int dim);
/// S_w = S_{i1} ∘ ... ∘ S_{in}. Throws InvalidArgument on an empty spec or a bad letter.
ComposedMap compose(const Word& w, const ContractionSpec& spec);
/// S_{w i} from S_w.
ComposedMap extend(const ComposedMap& w, Letter i, const ContractionSpec& spec);

/// Exact S_w; throws InvalidArgument unless spec.exact().
ExactAffine compose_exact(const Word& w, const ContractionSpec& spec);
ExactAffine extend_exact(const ExactAffine& w, Letter i, const ContractionSpec& spec);

/// Exact product of the similitude ratios along w.
QuadNumber exact_ratio(const Word& w, const ContractionSpec& spec);

}  // namespace augtree
