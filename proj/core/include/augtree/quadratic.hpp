#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace augtree {

/// Exact element a + b*sqrt(D) of a real quadratic field Q(sqrt(D)).
///
/// D is a squarefree integer > 1, or 0 when the value is rational. Binary
/// operations between two irrational values require the same radicand;
/// mixing fields throws InvalidArgument. Rational IFS parameters are the
/// D = 0 special case, so one type covers both exact modes.
class QuadNumber {
 public:
  QuadNumber() = default;
  QuadNumber(long value) : a_(value) {}  // NOLINT: implicit from integers is intended
  explicit QuadNumber(mpq_class rational);
  QuadNumber(mpq_class a, mpq_class b, unsigned long radicand);

  /// sqrt(n) with square factors pulled out: sqrt(12) = 2*sqrt(3).
  static QuadNumber sqrt_of(unsigned long n);

  const mpq_class& rational_part() const { return a_; }
  const mpq_class& irrational_part() const { return b_; }
  unsigned long radicand() const { return d_; }
  bool is_rational() const { return d_ == 0; }

  int sign() const;
  double to_double() const;

  /// Canonical text, e.g. "1/2", "-1/2+1/2*sqrt(5)". Equal values give equal text.
  std::string to_string() const;

  QuadNumber operator-() const;
  QuadNumber& operator+=(const QuadNumber& o);
  QuadNumber& operator-=(const QuadNumber& o);
  QuadNumber& operator*=(const QuadNumber& o);
  QuadNumber& operator/=(const QuadNumber& o);

  friend QuadNumber operator+(QuadNumber x, const QuadNumber& y) { return x += y; }
  friend QuadNumber operator-(QuadNumber x, const QuadNumber& y) { return x -= y; }
  friend QuadNumber operator*(QuadNumber x, const QuadNumber& y) { return x *= y; }
  friend QuadNumber operator/(QuadNumber x, const QuadNumber& y) { return x /= y; }

  friend bool operator==(const QuadNumber& x, const QuadNumber& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadNumber& x, const QuadNumber& y);

 private:
  unsigned long common_radicand(const QuadNumber& o) const;
  void normalize();

  mpq_class a_{0};
  mpq_class b_{0};
  unsigned long d_ = 0;
};

QuadNumber pow(const QuadNumber& base, unsigned exponent);

}  // namespace augtree
