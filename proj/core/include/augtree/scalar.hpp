#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "augtree/quadratic.hpp"

namespace augtree {

/// A real parameter carried both as a double and, when the text was exact,
/// as an element of Q or Q(sqrt(D)).
struct Scalar {
  double value = 0.0;
  std::optional<QuadNumber> exact;

  Scalar() = default;
  Scalar(double v) : value(v) {}  // NOLINT
  explicit Scalar(QuadNumber q) : value(q.to_double()), exact(std::move(q)) {}

  bool is_exact() const { return exact.has_value(); }
};

/// Parses arithmetic over integers, fractions and square roots:
/// "1/3", "(sqrt(5)-1)/2", "2*sqrt3/3", "-0.25". Integer and sqrt terms stay
/// exact; any decimal literal makes the whole value floating point.
/// Throws ConfigError on malformed text.
Scalar parse_scalar(std::string_view text);

}  // namespace augtree
