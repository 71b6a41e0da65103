#pragma once

#include "owf/cyclotomic.hpp"
#include "owf/laurent.hpp"

#include <array>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace owf {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The basis unitary u^p_q = y^q v^p of M_d(C); indices live in Z/d.
///
/// `p` is the shift (row-offset) label and `q` the clock exponent.
struct BasisUnitary {
  long p = 0;
  long q = 0;
  long d = 1;

  BasisUnitary() = default;
  /// Reduces p and q into [0, d).
  BasisUnitary(long p_, long q_, long d_);

  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const BasisUnitary&, const BasisUnitary&) = default;
  friend auto operator<=>(const BasisUnitary&, const BasisUnitary&) = default;
};

/// coeff * unit. The zero element is normalized to unit u^0_0.
struct ScaledUnitary {
  CycloNum coeff;
  BasisUnitary unit;
};

/// omega^exponent * unit, kept unevaluated so callers can fold exponents.
struct PhasedUnitary {
  long exponent = 0;
  BasisUnitary unit;
};

/// u^{p1}_{q1} u^{p2}_{q2} = w^{p1 q2} u^{p1+p2}_{q1+q2}.
PhasedUnitary unit_product_phase(const BasisUnitary& a, const BasisUnitary& b);
ScaledUnitary unit_product(const BasisUnitary& a, const BasisUnitary& b, const CycloField& field);

/// Left-to-right product of a nonempty word; exponent reduced mod d.
PhasedUnitary word_product_phase(std::span<const BasisUnitary> units);
ScaledUnitary word_product(std::span<const BasisUnitary> units, const CycloField& field);

/// Dense d x d matrix over Q(omega_d); used as an oracle for the symbolic rules.
class DenseMatrix {
 public:
  DenseMatrix(const CycloField& field);  // zero matrix
  static DenseMatrix identity(const CycloField& field);

  [[nodiscard]] long dim() const { return field_->d(); }
  [[nodiscard]] const CycloField& field() const { return *field_; }
  [[nodiscard]] const CycloNum& at(long i, long j) const { return entries_[index(i, j)]; }
  CycloNum& at(long i, long j) { return entries_[index(i, j)]; }
  [[nodiscard]] bool is_zero() const;

  DenseMatrix& operator+=(const DenseMatrix& o);
  DenseMatrix& operator*=(const CycloNum& s);
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
  friend DenseMatrix operator*(DenseMatrix a, const CycloNum& s) { return a *= s; }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b);

 private:
  [[nodiscard]] std::size_t index(long i, long j) const {
    return static_cast<std::size_t>(i * field_->d() + j);
  }
  const CycloField* field_;
  std::vector<CycloNum> entries_;
};

/// The clock matrix y = diag(1, w, ..., w^{d-1}).
DenseMatrix clock_matrix(const CycloField& field);
/// The cyclic shift v with ones at (i, i+1) and (d-1, 0).
DenseMatrix shift_matrix(const CycloField& field);
/// y^q v^p.
DenseMatrix realize(const BasisUnitary& u, const CycloField& field);

/// Rank over Q(omega_d) of a list of matrices viewed as vectors of length d^2.
long matrix_span_rank(const std::vector<DenseMatrix>& matrices);

// ---------------------------------------------------------------------------
// Parametric even-dimension mode: d = 2c with c symbolic.

enum class Parity { Even, Odd };
[[nodiscard]] inline long parity_value(Parity p) { return p == Parity::Odd ? 1 : 0; }
[[nodiscard]] std::string to_string(Parity p);

/// a + b*c with integer a, b.
struct LinearIndex {
  long a = 0;
  long b = 0;
  [[nodiscard]] long at(long c) const { return a + b * c; }
  /// Reduce b modulo 2 (2c == d == 0 as an index).
  [[nodiscard]] LinearIndex normalized() const;
  [[nodiscard]] std::string to_string() const;
  friend LinearIndex operator+(LinearIndex x, LinearIndex y) { return {x.a + y.a, x.b + y.b}; }
  friend LinearIndex operator-(LinearIndex x, LinearIndex y) { return {x.a - y.a, x.b - y.b}; }
  friend bool operator==(const LinearIndex&, const LinearIndex&) = default;
};

/// u^p_q with p a linear form in c and q either a linear form or wiggle + offset.
struct ParamUnitary {
  LinearIndex p;
  LinearIndex q;         // offset added to the wiggle symbol when `wiggle` is set
  bool wiggle = false;

  [[nodiscard]] BasisUnitary instantiate(long c, long wiggle_q) const;
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const ParamUnitary&, const ParamUnitary&) = default;
};

struct ParamContext {
  Parity c_parity = Parity::Odd;
  Parity q_parity = Parity::Even;
};

/// Exponent A + B c + C c^2 + E c q + F q of omega.
struct ExponentExpr {
  long constant = 0;
  long c = 0;
  long c2 = 0;
  long cq = 0;
  long q = 0;
  ExponentExpr& operator+=(const ExponentExpr& o);
};

/// Raised when an exponent keeps a bare multiple of q (not parity-reducible).
struct NotParityReducible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamProduct {
  ParamUnitary target;
  LaurentPoly scalar;  // a signed monomial +-w^A
};

/// Product of the ordered units under the cocycle rule, reduced with
/// w^{2c} = 1, w^c = -1, w^{c^2} = (-1)^c and w^{cq} = (-1)^q.
/// Throws NotParityReducible, or std::invalid_argument for more than one wiggle slot.
ParamProduct param_product(std::span<const ParamUnitary> units, const ParamContext& ctx);

/// Raw exponent of the ordered product before any reduction.
ExponentExpr param_exponent(std::span<const ParamUnitary> units);

}  // namespace owf
