#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "augtree/error.hpp"
#include "augtree/scalar.hpp"

namespace augtree {
namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  Scalar parse() {
    Scalar v = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("cannot parse number '" + std::string(text_) + "': " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Scalar combine(const Scalar& x, const Scalar& y, char op) {
    Scalar r;
    switch (op) {
      case '+': r.value = x.value + y.value; break;
      case '-': r.value = x.value - y.value; break;
      case '*': r.value = x.value * y.value; break;
      default: r.value = x.value / y.value; break;
    }
    if (x.exact && y.exact) {
      QuadNumber q = *x.exact;
      switch (op) {
        case '+': q += *y.exact; break;
        case '-': q -= *y.exact; break;
        case '*': q *= *y.exact; break;
        default: q /= *y.exact; break;
      }
      r.value = q.to_double();
      r.exact = std::move(q);
    }
    return r;
  }

  Scalar expression() {
    Scalar v = term();
    for (;;) {
      if (accept('+')) v = combine(v, term(), '+');
      else if (accept('-')) v = combine(v, term(), '-');
      else return v;
    }
  }

  Scalar term() {
    Scalar v = factor();
    for (;;) {
      if (accept('*')) {
        v = combine(v, factor(), '*');
      } else if (accept('/')) {
        Scalar d = factor();
        if (d.value == 0.0) fail("division by zero");
        v = combine(v, d, '/');
      } else {
        return v;
      }
    }
  }

  Scalar factor() {
    if (accept('-')) {
      Scalar v = factor();
      v.value = -v.value;
      if (v.exact) v.exact = -*v.exact;
      return v;
    }
    if (accept('+')) return factor();
    if (accept('(')) {
      Scalar v = expression();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    skip_space();
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      const bool paren = accept('(');
      Scalar arg = paren ? expression() : number();
      if (paren && !accept(')')) fail("missing ')' after sqrt");
      if (arg.value < 0) fail("sqrt of a negative value");
      Scalar r{std::sqrt(arg.value)};
      if (arg.exact && arg.exact->is_rational()) {
        const mpq_class& q = arg.exact->rational_part();
        if (q.get_den() != 1 || !q.get_num().fits_ulong_p()) fail("sqrt argument must be a non-negative integer");
        r = Scalar(QuadNumber::sqrt_of(q.get_num().get_ui()));
      }
      return r;
    }
    return number();
  }

  Scalar number() {
    skip_space();
    const std::size_t start = pos_;
    bool decimal = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '.') {
        decimal = true;
        ++pos_;
      } else if ((c == 'e' || c == 'E') && pos_ > start) {
        decimal = true;
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
      } else {
        break;
      }
    }
    if (pos_ == start) fail("expected a number");
    const std::string literal(text_.substr(start, pos_ - start));
    if (decimal) {
      char* end = nullptr;
      const double v = std::strtod(literal.c_str(), &end);
      if (end != literal.c_str() + literal.size()) fail("bad literal '" + literal + "'");
      return Scalar{v};
    }
    return Scalar(QuadNumber(mpq_class(mpz_class(literal, 10))));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text) { return ScalarParser(text).parse(); }

}  // namespace augtree
