#include "augtree/quadratic.hpp"

#include <cmath>

#include "augtree/error.hpp"

namespace augtree {

QuadNumber::QuadNumber(mpq_class rational) : a_(std::move(rational)) { a_.canonicalize(); }

QuadNumber::QuadNumber(mpq_class a, mpq_class b, unsigned long radicand)
    : a_(std::move(a)), b_(std::move(b)), d_(radicand) {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
    d_ = 0;
  }
  normalize();
}

QuadNumber QuadNumber::sqrt_of(unsigned long n) {
  if (n == 0) return QuadNumber{};
  unsigned long outside = 1;
  unsigned long inside = n;
  for (unsigned long p = 2; p * p <= inside; ++p) {
    while (inside % (p * p) == 0) {
      inside /= p * p;
      outside *= p;
    }
  }
  if (inside == 1) return QuadNumber(static_cast<long>(outside));
  return QuadNumber(mpq_class(0), mpq_class(outside), inside);
}

void QuadNumber::normalize() {
  if (b_ == 0) d_ = 0;
  if (d_ == 0) b_ = 0;
}

unsigned long QuadNumber::common_radicand(const QuadNumber& o) const {
  if (d_ == 0) return o.d_;
  if (o.d_ == 0 || o.d_ == d_) return d_;
  throw InvalidArgument("exact arithmetic across different quadratic fields: sqrt(" +
                        std::to_string(d_) + ") and sqrt(" + std::to_string(o.d_) + ")");
}

int QuadNumber::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 * D.
  const mpq_class lhs = a_ * a_;
  const mpq_class rhs = b_ * b_ * mpq_class(d_);
  return lhs > rhs ? sa : sb;
}

double QuadNumber::to_double() const {
  if (d_ == 0) return a_.get_d();
  const long double a = a_.get_d();
  const long double b = b_.get_d();
  const long double root = std::sqrt(static_cast<long double>(d_));
  // a and b*sqrt(D) can nearly cancel; fall back to the conjugate form.
  const long double direct = a + b * root;
  if (std::fabs(direct) > 1e-6L * (std::fabs(a) + std::fabs(b * root))) return static_cast<double>(direct);
  const mpq_class norm = a_ * a_ - b_ * b_ * mpq_class(d_);
  const long double conj = a - b * root;
  return static_cast<double>(static_cast<long double>(norm.get_d()) / conj);
}

std::string QuadNumber::to_string() const {
  std::string out = a_.get_str();
  if (d_ == 0) return out;
  if (b_ > 0) out += '+';
  out += b_.get_str() + "*sqrt(" + std::to_string(d_) + ")";
  return out;
}

QuadNumber QuadNumber::operator-() const {
  QuadNumber r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

QuadNumber& QuadNumber::operator+=(const QuadNumber& o) {
  d_ = common_radicand(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

QuadNumber& QuadNumber::operator-=(const QuadNumber& o) {
  d_ = common_radicand(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

QuadNumber& QuadNumber::operator*=(const QuadNumber& o) {
  const unsigned long d = common_radicand(o);
  const mpq_class a = a_ * o.a_ + b_ * o.b_ * mpq_class(d);
  const mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

QuadNumber& QuadNumber::operator/=(const QuadNumber& o) {
  if (o.sign() == 0) throw InvalidArgument("division by zero in exact arithmetic");
  const unsigned long d = common_radicand(o);
  // (a + b r)/(c + e r) = (a + b r)(c - e r) / (c^2 - e^2 D)
  const mpq_class norm = o.a_ * o.a_ - o.b_ * o.b_ * mpq_class(d);
  const mpq_class a = (a_ * o.a_ - b_ * o.b_ * mpq_class(d)) / norm;
  const mpq_class b = (b_ * o.a_ - a_ * o.b_) / norm;
  a_ = a;
  b_ = b;
  d_ = d;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const QuadNumber& x, const QuadNumber& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

QuadNumber pow(const QuadNumber& base, unsigned exponent) {
  QuadNumber result(1L);
  QuadNumber b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

}  // namespace augtree
