#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace owf {

/// Thrown for any division by an exact zero (rationals, polynomials, field elements).
struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

/// Exact rational number in lowest terms with positive denominator.
///
/// Thin value wrapper over GMP's mpq; every constructor canonicalizes, so
/// structural equality is numeric equality.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT
  Rational(long numerator, long denominator);
  explicit Rational(const mpz_class& integer) : value_(integer) {}
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

  /// Parses "n", "-n" or "n/d" (d nonzero). Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] bool is_one() const { return value_ == 1; }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
  [[nodiscard]] double to_double() const { return value_.get_d(); }

  /// "num/den" form, always with an explicit denominator.
  [[nodiscard]] std::string to_fraction_string() const;
  /// Human form: "3", "-1/3".
  [[nodiscard]] std::string to_string() const { return value_.get_str(); }

  [[nodiscard]] Rational inverse() const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.value_ = -a.value_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Adds a*b into this without a temporary for the product.
  void add_product(const Rational& a, const Rational& b);
  void sub_product(const Rational& a, const Rational& b);

  [[nodiscard]] std::size_t hash() const;

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// gcd of two nonnegative integers given as rationals' numerators.
mpz_class integer_gcd(const mpz_class& a, const mpz_class& b);

}  // namespace owf

template <>
struct std::hash<owf::Rational> {
  std::size_t operator()(const owf::Rational& r) const noexcept { return r.hash(); }
};
