#pragma once

#include "owf/clock_shift.hpp"
#include "owf/cyclotomic.hpp"
#include "owf/laurent.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace owf {

/// The four free coefficients, in this order, after normalizing
/// a123 + a231 + a312 = 1 and imposing sum(a_sigma) = 0.
inline constexpr std::array<std::string_view, 4> kFreeCoefficientNames{"a123", "a132", "a213", "a231"};

/// All six words x_i x_j x_k, as 0-based variable indices, in the order
/// 123, 132, 213, 231, 312, 321.
inline constexpr std::array<std::array<int, 3>, 6> kWords{{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
inline constexpr std::array<std::string_view, 6> kWordNames{"a123", "a132", "a213", "a231", "a312", "a321"};

/// constant + sum_i linear[i] * a_i over the four free coefficients.
template <class S>
struct AffineForm {
  S constant{};
  std::array<S, 4> linear{};

  [[nodiscard]] bool is_constant() const {
    for (const auto& c : linear) {
      if (!c.is_zero()) return false;
    }
    return true;
  }
  [[nodiscard]] bool is_identically_zero() const { return is_constant() && constant.is_zero(); }
  /// Constant and nonzero: never vanishes.
  [[nodiscard]] bool is_constant_nonzero() const { return is_constant() && !constant.is_zero(); }

  AffineForm& operator+=(const AffineForm& o) {
    constant += o.constant;
    for (std::size_t i = 0; i < 4; ++i) linear[i] += o.linear[i];
    return *this;
  }
  AffineForm& operator-=(const AffineForm& o) {
    constant -= o.constant;
    for (std::size_t i = 0; i < 4; ++i) linear[i] -= o.linear[i];
    return *this;
  }
  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
  friend bool operator==(const AffineForm&, const AffineForm&) = default;

  template <class F>
  [[nodiscard]] auto map(F&& f) const -> AffineForm<decltype(f(constant))> {
    AffineForm<decltype(f(constant))> out;
    out.constant = f(constant);
    for (std::size_t i = 0; i < 4; ++i) out.linear[i] = f(linear[i]);
    return out;
  }
};

template <class S>
using ParamPoint = std::array<S, 4>;

/// The six coefficient forms a_sigma of f in the free coefficients, with
/// a312 = 1 - a123 - a231 and a321 = -1 - a132 - a213 substituted.
struct MultilinearCubic {
  std::array<AffineForm<Rational>, 6> coefficients;
  static const MultilinearCubic& normalized();
};

/// Renders e.g. "(-2 - w) + (2 + w)*a123".
std::string to_string(const AffineForm<CycloNum>& form);
std::string to_string(const AffineForm<UniPoly>& form);
std::string to_string(const AffineForm<LaurentPoly>& form);
std::string to_string(const AffineForm<Rational>& form);

template <class S>
S evaluate_form(const AffineForm<S>& form, const ParamPoint<S>& point) {
  S acc = form.constant;
  for (std::size_t i = 0; i < 4; ++i) acc += form.linear[i] * point[i];
  return acc;
}

struct UnitEvaluation {
  BasisUnitary target;
  AffineForm<CycloNum> coeff;
};

/// f(t1, t2, t3) = coeff * target for basis unitaries.
UnitEvaluation evaluate_on_units(const CycloField& field, const std::array<BasisUnitary, 3>& triple);

ScaledUnitary evaluate_at_point(const CycloField& field, const std::array<BasisUnitary, 3>& triple,
                                const ParamPoint<CycloNum>& point);

/// Six coefficients (a123, a132, a213, a231, a312, a321) for a free point.
std::array<Rational, 6> full_coefficients(const ParamPoint<Rational>& point);

/// Dense evaluation of sum_sigma a_sigma X_sigma(1) X_sigma(2) X_sigma(3); an oracle.
DenseMatrix evaluate_dense(const std::array<CycloNum, 6>& coefficients, const std::array<DenseMatrix, 3>& args);

struct ParamEvaluation {
  ParamUnitary target;
  /// Coefficient times w^shift, so that all exponents are nonnegative.
  AffineForm<UniPoly> coeff;
  long shift = 0;
  /// The unshifted coefficient in Z[w, w^-1].
  AffineForm<LaurentPoly> laurent;
};

/// Six-word sum for d = 2c with the wiggle parity fixed.
ParamEvaluation evaluate_param_even(Parity c_parity, const std::array<ParamUnitary, 3>& triple,
                                    Parity q_parity);

// ---------------------------------------------------------------------------
// Formal-wiggle mode: all six a_sigma kept as free symbols.

/// sum_i c[i] * a_sigma_i over the six words in kWords order.
struct SixLinear {
  std::array<Rational, 6> c{};
  [[nodiscard]] bool is_zero() const;
  SixLinear& operator+=(const SixLinear& o);
  SixLinear& operator-=(const SixLinear& o);
  SixLinear& operator*=(const Rational& r);
  friend SixLinear operator+(SixLinear a, const SixLinear& b) { return a += b; }
  friend SixLinear operator-(SixLinear a, const SixLinear& b) { return a -= b; }
  friend SixLinear operator*(SixLinear a, const Rational& r) { return a *= r; }
  friend bool operator==(const SixLinear&, const SixLinear&) = default;
  static SixLinear symbol(std::size_t word);
  [[nodiscard]] std::string to_string() const;
};

/// Polynomial in t = w^p with SixLinear coefficients (index = power of t).
struct TPoly {
  std::vector<SixLinear> coeffs;
  void trim();
  [[nodiscard]] bool is_zero() const;
  friend TPoly operator+(const TPoly& a, const TPoly& b);
  friend TPoly operator-(const TPoly& a, const TPoly& b);
  /// Multiply by a rational polynomial in t.
  friend TPoly operator*(const TPoly& a, const UniPoly& t_poly);
  friend bool operator==(const TPoly& a, const TPoly& b);
  [[nodiscard]] std::string to_string() const;
};

/// Each entry replaces symbol `word` by `value` (applied left to right).
struct Substitution {
  std::size_t word;
  SixLinear value;
};
SixLinear substitute(const SixLinear& x, const std::vector<Substitution>& subs);
TPoly substitute(const TPoly& x, const std::vector<Substitution>& subs);

struct FormalSlot {
  bool wiggle = false;
  long p = 0;  // must be 0 on fixed slots
  long q = 0;
};

struct FormalEvaluation {
  long target_q_offset = 0;  // target is u^p_{q + offset}
  TPoly coeff;
};

/// Requires exactly one wiggle slot and p == 0 on the fixed ones.
FormalEvaluation evaluate_formal_wiggle(const std::array<FormalSlot, 3>& triple);

}  // namespace owf
