#pragma once

#include "owf/unipoly.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace owf {

struct FieldMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Euler's totient.
long euler_phi(long n);

/// The n-th cyclotomic polynomial, n >= 1. Results are memoized.
const UniPoly& cyclotomic_polynomial(long n);

/// All m >= 1 with Phi_m | p over Q, i.e. the orders of the roots of unity
/// at which p vanishes. Throws std::invalid_argument for p == 0.
std::set<long> cyclotomic_divisors(const OmegaPoly& p);

class CycloNum;

/// The cyclotomic field Q(omega_d) = Q[x]/(Phi_d), omega_d = exp(2 pi i / d).
///
/// Instances are interned: of(d) always returns the same object, so elements
/// can hold a plain pointer to their field.
class CycloField {
 public:
  static const CycloField& of(long d);

  CycloField(const CycloField&) = delete;
  CycloField& operator=(const CycloField&) = delete;

  [[nodiscard]] long d() const { return d_; }
  [[nodiscard]] long degree() const { return degree_; }
  [[nodiscard]] const UniPoly& modulus() const { return *phi_; }

  [[nodiscard]] CycloNum zero() const;
  [[nodiscard]] CycloNum one() const;
  [[nodiscard]] CycloNum from_rational(const Rational& r) const;
  /// Reduces an arbitrary polynomial in omega modulo Phi_d.
  [[nodiscard]] CycloNum from_poly(const UniPoly& p) const;
  /// omega^(k mod d), any integer k.
  [[nodiscard]] CycloNum omega_power(long k) const;

  [[nodiscard]] std::complex<double> omega_numeric() const;

  /// Residue of p modulo Phi_d (p of degree < 2*degree uses the reduction table).
  [[nodiscard]] UniPoly reduce(const UniPoly& p) const;

 private:
  explicit CycloField(long d);
  long d_;
  long degree_;
  const UniPoly* phi_;
  // x^k mod Phi_d for k in [degree, 2*degree - 2], as dense vectors.
  std::vector<std::vector<Rational>> reduction_table_;
  // same table as integers (Phi_d is monic with integer coefficients)
  std::vector<std::vector<mpz_class>> int_reduction_;
  friend class CycloNum;
  std::vector<UniPoly> omega_powers_;
};

/// Element of Q(omega_d) in the power basis 1, omega, ..., omega^(phi(d)-1).
///
/// A default-constructed CycloNum is a field-less zero; it adopts the field of
/// the other operand in arithmetic.
class CycloNum {
 public:
  CycloNum() = default;

  [[nodiscard]] const CycloField* field() const { return field_; }
  [[nodiscard]] const UniPoly& residue() const { return residue_; }
  [[nodiscard]] bool is_zero() const { return residue_.is_zero(); }
  [[nodiscard]] bool is_one() const { return residue_.size() == 1 && residue_.leading().is_one(); }
  [[nodiscard]] bool is_rational() const { return residue_.is_constant(); }

  /// Throws DivisionByZero for zero.
  [[nodiscard]] CycloNum inverse() const;
  [[nodiscard]] std::complex<double> to_complex() const;
  [[nodiscard]] std::string to_string() const { return residue_.to_string("w"); }

  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator*=(const Rational& r);

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
  friend CycloNum operator*(CycloNum a, const Rational& r) { return a *= r; }
  friend CycloNum operator*(const Rational& r, CycloNum a) { return a *= r; }
  friend CycloNum operator/(const CycloNum& a, const CycloNum& b) { return a * b.inverse(); }
  friend CycloNum operator-(CycloNum a);

  /// Residues compared; field identity is checked separately by arithmetic.
  friend bool operator==(const CycloNum& a, const CycloNum& b) { return a.residue_ == b.residue_; }
  friend std::strong_ordering operator<=>(const CycloNum& a, const CycloNum& b) {
    return a.residue_ <=> b.residue_;
  }

 private:
  friend class CycloField;
  CycloNum(const CycloField* field, UniPoly residue) : field_(field), residue_(std::move(residue)) {}
  const CycloField* merge_field(const CycloNum& o) const;

  const CycloField* field_ = nullptr;
  UniPoly residue_;
};

/// Ring map from Q(omega_d) (elements whose denominators avoid p) onto F_p,
/// p a prime = 1 mod d near 2^62, sending omega to a primitive d-th root of
/// unity. A nonzero image proves a nonzero element; zero proves nothing.
class ModularImage {
 public:
  static const ModularImage& of(long d);
  [[nodiscard]] std::uint64_t prime() const { return p_; }
  [[nodiscard]] std::uint64_t root() const { return root_; }
  /// nullopt when some coefficient denominator is divisible by p.
  [[nodiscard]] std::optional<std::uint64_t> map(const CycloNum& x) const;
  [[nodiscard]] std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  [[nodiscard]] std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  [[nodiscard]] std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (p_ - b); }
  /// a != 0
  [[nodiscard]] std::uint64_t inv(std::uint64_t a) const;

 private:
  explicit ModularImage(long d);
  std::uint64_t p_ = 0;
  std::uint64_t root_ = 0;
  std::vector<std::uint64_t> powers_;  // root^k, k < phi(d)
};

CycloNum cyclo_add(const CycloNum& a, const CycloNum& b);
CycloNum cyclo_mul(const CycloNum& a, const CycloNum& b);
CycloNum cyclo_inv(const CycloNum& a);
CycloNum omega_power(const CycloField& field, long k);

}  // namespace owf
