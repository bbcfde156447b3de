#include "augtree/fingerprint.hpp"

#include <cmath>

#include "augtree/error.hpp"

namespace augtree {

MapFingerprint fingerprint(const ExactAffine& map) {
  std::string key = "L=";
  for (std::size_t i = 0; i < map.linear.size(); ++i) {
    if (i) key += ',';
    key += map.linear[i].to_string();
  }
  key += ";t=";
  for (std::size_t i = 0; i < map.translation.size(); ++i) {
    if (i) key += ',';
    key += map.translation[i].to_string();
  }
  return {std::move(key), false};
}

MapFingerprint fingerprint(const ComposedMap& map, double scale) {
  if (!map.affine) throw Unsupported("fingerprints need affine maps");
  const double tau = kFingerprintTolerance * scale;
  auto q = [&](double v) {
    const long long k = std::llround(v / tau);
    return std::to_string(k == 0 ? 0LL : k);
  };
  std::string key = "L~";
  for (Eigen::Index i = 0; i < map.linear.rows(); ++i)
    for (Eigen::Index j = 0; j < map.linear.cols(); ++j) {
      if (i || j) key += ',';
      key += q(map.linear(i, j));
    }
  key += ";t~";
  for (Eigen::Index i = 0; i < map.translation.size(); ++i) {
    if (i) key += ',';
    key += q(map.translation(i));
  }
  return {std::move(key), true};
}

MapFingerprint fingerprint(const Word& w, const ContractionSpec& spec, double scale) {
  if (spec.exact()) return fingerprint(compose_exact(w, spec));
  return fingerprint(compose(w, spec), scale);
}

}  // namespace augtree
