#include "owf/clock_shift.hpp"

#include <sstream>

namespace owf {

namespace {

long mod(long x, long d) {
  long r = x % d;
  return r < 0 ? r + d : r;
}

void require_same_d(long a, long b) {
  if (a != b) {
    throw DimensionMismatch("basis unitaries of dimensions " + std::to_string(a) + " and " + std::to_string(b));
  }
}

}  // namespace

BasisUnitary::BasisUnitary(long p_, long q_, long d_) : d(d_) {
  if (d_ < 1) throw std::invalid_argument("BasisUnitary: d must be >= 1");
  p = mod(p_, d_);
  q = mod(q_, d_);
}

std::string BasisUnitary::to_string() const {
  return "u^" + std::to_string(p) + "_" + std::to_string(q);
}

PhasedUnitary unit_product_phase(const BasisUnitary& a, const BasisUnitary& b) {
  require_same_d(a.d, b.d);
  return {mod(a.p * b.q, a.d), BasisUnitary(a.p + b.p, a.q + b.q, a.d)};
}

ScaledUnitary unit_product(const BasisUnitary& a, const BasisUnitary& b, const CycloField& field) {
  require_same_d(a.d, field.d());
  const auto ph = unit_product_phase(a, b);
  return {field.omega_power(ph.exponent), ph.unit};
}

PhasedUnitary word_product_phase(std::span<const BasisUnitary> units) {
  if (units.empty()) throw std::invalid_argument("word_product: empty word");
  PhasedUnitary acc{0, units.front()};
  for (std::size_t i = 1; i < units.size(); ++i) {
    const auto step = unit_product_phase(acc.unit, units[i]);
    acc.exponent = mod(acc.exponent + step.exponent, acc.unit.d);
    acc.unit = step.unit;
  }
  return acc;
}

ScaledUnitary word_product(std::span<const BasisUnitary> units, const CycloField& field) {
  const auto ph = word_product_phase(units);
  require_same_d(ph.unit.d, field.d());
  return {field.omega_power(ph.exponent), ph.unit};
}

// ---------------------------------------------------------------------------

DenseMatrix::DenseMatrix(const CycloField& field)
    : field_(&field), entries_(static_cast<std::size_t>(field.d() * field.d()), field.zero()) {}

DenseMatrix DenseMatrix::identity(const CycloField& field) {
  DenseMatrix m(field);
  for (long i = 0; i < field.d(); ++i) m.at(i, i) = field.one();
  return m;
}

bool DenseMatrix::is_zero() const {
  for (const auto& e : entries_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
  if (o.field_ != field_) throw FieldMismatch("DenseMatrix: field mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(const CycloNum& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.field_ != b.field_) throw FieldMismatch("DenseMatrix: field mismatch");
  const long n = a.dim();
  DenseMatrix r(*a.field_);
  for (long i = 0; i < n; ++i) {
    for (long k = 0; k < n; ++k) {
      const CycloNum& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (long j = 0; j < n; ++j) {
        const CycloNum& y = b.at(k, j);
        if (!y.is_zero()) r.at(i, j) += x * y;
      }
    }
  }
  return r;
}

bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
  return a.field_ == b.field_ && a.entries_ == b.entries_;
}

DenseMatrix clock_matrix(const CycloField& field) {
  DenseMatrix y(field);
  for (long i = 0; i < field.d(); ++i) y.at(i, i) = field.omega_power(i);
  return y;
}

DenseMatrix shift_matrix(const CycloField& field) {
  DenseMatrix v(field);
  const long d = field.d();
  for (long i = 0; i < d; ++i) v.at(i, (i + 1) % d) = field.one();
  return v;
}

DenseMatrix realize(const BasisUnitary& u, const CycloField& field) {
  require_same_d(u.d, field.d());
  const DenseMatrix y = clock_matrix(field);
  const DenseMatrix v = shift_matrix(field);
  DenseMatrix m = DenseMatrix::identity(field);
  for (long k = 0; k < u.q; ++k) m = m * y;
  for (long k = 0; k < u.p; ++k) m = m * v;
  return m;
}

long matrix_span_rank(const std::vector<DenseMatrix>& matrices) {
  if (matrices.empty()) return 0;
  const CycloField& field = matrices.front().field();
  const long n = field.d();
  std::vector<std::vector<CycloNum>> rows;
  rows.reserve(matrices.size());
  for (const auto& m : matrices) {
    std::vector<CycloNum> row;
    row.reserve(static_cast<std::size_t>(n * n));
    for (long i = 0; i < n; ++i) {
      for (long j = 0; j < n; ++j) row.push_back(m.at(i, j));
    }
    rows.push_back(std::move(row));
  }
  long rank = 0;
  const std::size_t cols = static_cast<std::size_t>(n * n);
  for (std::size_t col = 0; col < cols && rank < static_cast<long>(rows.size()); ++col) {
    auto r = static_cast<std::size_t>(rank);
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const CycloNum inv = rows[r][col].inverse();
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][col].is_zero()) continue;
      const CycloNum f = rows[i][col];
      for (std::size_t j = col; j < cols; ++j) {
        if (!rows[r][j].is_zero()) rows[i][j] -= f * rows[r][j];
      }
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------

std::string to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

LinearIndex LinearIndex::normalized() const { return {a, mod(b, 2)}; }

std::string LinearIndex::to_string() const {
  std::ostringstream os;
  if (b == 0) {
    os << a;
    return os.str();
  }
  if (b == 1) {
    os << "c";
  } else if (b == -1) {
    os << "-c";
  } else {
    os << b << "c";
  }
  if (a > 0) os << "+" << a;
  if (a < 0) os << a;
  return os.str();
}

BasisUnitary ParamUnitary::instantiate(long c, long wiggle_q) const {
  const long d = 2 * c;
  return BasisUnitary(p.at(c), q.at(c) + (wiggle ? wiggle_q : 0), d);
}

std::string ParamUnitary::to_string() const {
  std::string col;
  if (wiggle) {
    col = "q";
    if (q.a != 0 || q.b != 0) col += "+" + q.to_string();
  } else {
    col = q.to_string();
  }
  return "u^{" + p.to_string() + "}_{" + col + "}";
}

ExponentExpr& ExponentExpr::operator+=(const ExponentExpr& o) {
  constant += o.constant;
  c += o.c;
  c2 += o.c2;
  cq += o.cq;
  q += o.q;
  return *this;
}

ExponentExpr param_exponent(std::span<const ParamUnitary> units) {
  ExponentExpr e;
  int wiggles = 0;
  for (const auto& u : units) wiggles += u.wiggle ? 1 : 0;
  if (wiggles > 1) throw std::invalid_argument("param_product: more than one wiggle slot");
  // sum_{i<j} p_i * q_j
  LinearIndex prefix{};
  for (const auto& u : units) {
    // (prefix.a + prefix.b c) * (u.q.a + u.q.b c + [wiggle] q)
    e.constant += prefix.a * u.q.a;
    e.c += prefix.a * u.q.b + prefix.b * u.q.a;
    e.c2 += prefix.b * u.q.b;
    if (u.wiggle) {
      e.cq += prefix.b;
      e.q += prefix.a;
    }
    prefix = prefix + u.p;
  }
  return e;
}

ParamProduct param_product(std::span<const ParamUnitary> units, const ParamContext& ctx) {
  if (units.empty()) throw std::invalid_argument("param_product: empty word");
  const ExponentExpr e = param_exponent(units);
  if (e.q != 0) {
    throw NotParityReducible("exponent keeps a bare multiple of q (" + std::to_string(e.q) + "q)");
  }
  const long sign_exp = e.c + e.c2 * parity_value(ctx.c_parity) + e.cq * parity_value(ctx.q_parity);
  const Rational sign = (sign_exp % 2 == 0) ? Rational(1) : Rational(-1);

  ParamUnitary target;
  for (const auto& u : units) {
    target.p = target.p + u.p;
    target.q = target.q + u.q;
    target.wiggle = target.wiggle || u.wiggle;
  }
  target.p = target.p.normalized();
  target.q = target.q.normalized();
  return {target, LaurentPoly::monomial(sign, e.constant)};
}

}  // namespace owf
