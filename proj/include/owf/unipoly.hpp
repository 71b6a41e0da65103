#pragma once

#include "owf/rational.hpp"

#include <complex>
#include <compare>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace owf {

/// Dense univariate polynomial over the rationals, lowest degree first.
///
/// Normal form: no trailing zero coefficients, so the zero polynomial is the
/// empty coefficient list and degree() == -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);
  UniPoly(std::initializer_list<Rational> coefficients);

  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, std::size_t power);
  /// x^n - 1
  static UniPoly x_pow_minus_one(std::size_t n);

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] bool is_constant() const { return coeffs_.size() <= 1; }
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return coeffs_; }
  [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
  /// Coefficient of x^k; zero past the degree.
  [[nodiscard]] Rational coeff(std::size_t k) const;
  [[nodiscard]] const Rational& leading() const;

  [[nodiscard]] UniPoly monic() const;
  /// Integer coefficients, content 1, positive leading coefficient.
  [[nodiscard]] UniPoly primitive_part() const;
  /// Multiply by x^k.
  [[nodiscard]] UniPoly shifted(std::size_t k) const;

  [[nodiscard]] Rational evaluate(const Rational& x) const;
  [[nodiscard]] std::complex<double> evaluate(std::complex<double> x) const;

  /// e.g. "w^2 - 6*w + 1"
  [[nodiscard]] std::string to_string(std::string_view var = "w") const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const Rational& c);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(const UniPoly& a);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, const Rational& c) { return a *= c; }
  friend UniPoly operator*(const Rational& c, UniPoly a) { return a *= c; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) = default;
  /// Degree first, then coefficients from the top down.
  friend std::strong_ordering operator<=>(const UniPoly& a, const UniPoly& b);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct DivMod {
  UniPoly quotient;
  UniPoly remainder;
};

/// Euclidean division over Q. Throws DivisionByZero when divisor is zero.
DivMod divmod(const UniPoly& a, const UniPoly& b);

/// Monic gcd (zero if both are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

struct ExtendedGcd {
  UniPoly gcd;  // monic
  UniPoly s;    // s*a + t*b == gcd
  UniPoly t;
};
ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b);

/// True iff b divides a exactly (b nonzero).
bool divides(const UniPoly& b, const UniPoly& a);

/// Formal-ω polynomial ring Q[ω]: same representation, never reduced.
using OmegaPoly = UniPoly;

}  // namespace owf
