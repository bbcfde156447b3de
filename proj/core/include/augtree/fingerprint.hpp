#pragma once

#include <string>

#include "augtree/ifs.hpp"

namespace augtree {

/// Canonical text of an affine map. Exact fingerprints are equal iff the maps
/// are equal; rounded ones only up to the tolerance and carry `heuristic`.
struct MapFingerprint {
  std::string key;
  bool heuristic = false;

  friend bool operator==(const MapFingerprint& a, const MapFingerprint& b) { return a.key == b.key; }
};

/// Rounding tolerance for floating-point fingerprints: 1e-9 times `scale`.
inline constexpr double kFingerprintTolerance = 1e-9;

MapFingerprint fingerprint(const ExactAffine& map);
MapFingerprint fingerprint(const ComposedMap& map, double scale = 1.0);
/// Exact when spec.exact(), rounded otherwise.
MapFingerprint fingerprint(const Word& w, const ContractionSpec& spec, double scale = 1.0);

}  // namespace augtree
