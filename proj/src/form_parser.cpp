// Recursive-descent reader for table forms such as
//   -(1 - w^-1) - 2*w^-1*a123 - (1 - w^-1)*a132 - 2*a213
// Products must keep the result affine in the a's.
#include "owf/certificates.hpp"

#include <cctype>

namespace owf {

namespace {

using Form = AffineForm<LaurentPoly>;

bool is_scalar(const Form& f) { return f.is_constant(); }

Form scale(const Form& f, const LaurentPoly& s) {
  return f.map([&](const LaurentPoly& x) { return x * s; });
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Form parse() {
    Form f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw CertificateError("form \"" + std::string(s_) + "\" at " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Form expr() {
    Form acc;
    bool first = true;
    while (true) {
      bool neg = false;
      if (eat('-')) {
        neg = true;
      } else if (eat('+')) {
      } else if (!first) {
        break;
      }
      Form t = term();
      if (neg) {
        acc -= t;
      } else {
        acc += t;
      }
      first = false;
      const char c = peek();
      if (c != '+' && c != '-') break;
    }
    return acc;
  }

  Form term() {
    Form acc = factor();
    while (true) {
      if (eat('*')) {
        Form rhs = factor();
        if (is_scalar(acc)) {
          acc = scale(rhs, acc.constant);
        } else if (is_scalar(rhs)) {
          acc = scale(acc, rhs.constant);
        } else {
          fail("product of two non-constant terms is not affine");
        }
      } else if (eat('/')) {
        Form rhs = factor();
        if (!is_scalar(rhs) || rhs.constant.low() != 0 || rhs.constant.poly().degree() != 0) {
          fail("can only divide by a nonzero rational");
        }
        acc = scale(acc, LaurentPoly::constant(rhs.constant.poly().leading().inverse()));
      } else {
        return acc;
      }
    }
  }

  Form factor() {
    if (eat('-')) {
      Form f = factor();
      return Form{} - f;
    }
    if (eat('+')) return factor();
    if (eat('(')) {
      Form f = expr();
      if (!eat(')')) fail("missing ')'");
      return f;
    }
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Form f;
      f.constant = LaurentPoly::constant(Rational(number()));
      return f;
    }
    if (c == 'w') {
      ++pos_;
      long e = 1;
      if (eat('^')) {
        bool neg = eat('-');
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("exponent expected");
        e = number();
        if (neg) e = -e;
      }
      Form f;
      f.constant = LaurentPoly::monomial(Rational(1), e);
      return f;
    }
    if (c == 'a') {
      ++pos_;
      std::string name = "a";
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) name += s_[pos_++];
      Form f;
      for (std::size_t i = 0; i < 4; ++i) {
        if (kFreeCoefficientNames[i] == name) {
          f.linear[i] = LaurentPoly::constant(Rational(1));
          return f;
        }
      }
      fail("unknown coefficient " + name + " (free ones are a123, a132, a213, a231)");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  long number() {
    long v = 0;
    std::size_t digits = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (++digits > 12) fail("number too long");
      v = v * 10 + (s_[pos_++] - '0');
    }
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

AffineForm<LaurentPoly> parse_form(std::string_view text) { return Parser(text).parse(); }

}  // namespace owf
