#pragma once

#include "owf/cyclotomic.hpp"
#include "owf/unipoly.hpp"

#include <string>

namespace owf {

/// Element of Z[w, w^-1] (rational coefficients): sum_i poly[i] * w^(low + i).
///
/// Normal form: poly has a nonzero constant term (so `low` is the true lowest
/// exponent), or poly is zero and low == 0.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(UniPoly poly, long low);
  static LaurentPoly constant(const Rational& c) { return {UniPoly::constant(c), 0}; }
  static LaurentPoly monomial(const Rational& c, long exponent) { return {UniPoly::constant(c), exponent}; }
  static LaurentPoly from_poly(const UniPoly& p) { return {p, 0}; }

  [[nodiscard]] bool is_zero() const { return poly_.is_zero(); }
  /// Lowest exponent present (0 for the zero element).
  [[nodiscard]] long low() const { return low_; }
  [[nodiscard]] long high() const { return low_ + poly_.degree(); }
  [[nodiscard]] const UniPoly& poly() const { return poly_; }
  /// Exponent-free part when every exponent is nonnegative.
  [[nodiscard]] bool is_polynomial() const { return low_ >= 0; }
  /// The ordinary polynomial w^k * this; requires low() + k >= 0.
  [[nodiscard]] UniPoly times_omega_power(long k) const;
  [[nodiscard]] CycloNum in_field(const CycloField& field) const;
  [[nodiscard]] std::string to_string() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) { return {-a.poly_, a.low_}; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

 private:
  void normalize();
  UniPoly poly_;
  long low_ = 0;
};

}  // namespace owf
