#include "owf/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace owf {

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

const UniPoly& cyclotomic_polynomial(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be >= 1");
  static std::mutex mutex;
  static std::map<long, std::unique_ptr<UniPoly>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  // Phi_n = (x^n - 1) / prod_{m | n, m < n} Phi_m
  UniPoly acc = UniPoly::x_pow_minus_one(static_cast<std::size_t>(n));
  for (long m = 1; m < n; ++m) {
    if (n % m != 0) continue;
    auto [q, r] = divmod(acc, cyclotomic_polynomial(m));
    acc = std::move(q);
  }
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(n, std::make_unique<UniPoly>(std::move(acc)));
  return *it->second;
}

std::set<long> cyclotomic_divisors(const OmegaPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("cyclotomic_divisors: zero polynomial");
  std::set<long> out;
  const long deg = p.degree();
  if (deg <= 0) return out;
  // phi(m) >= sqrt(m/2), so phi(m) <= deg forces m <= 2*deg^2.
  const long cap = std::max(6L, 6 * deg * deg);
  for (long m = 1; m <= cap; ++m) {
    if (euler_phi(m) > deg) continue;
    if (divides(cyclotomic_polynomial(m), p)) out.insert(m);
  }
  return out;
}

const CycloField& CycloField::of(long d) {
  if (d < 1) throw std::invalid_argument("CycloField: d must be >= 1");
  static std::mutex mutex;
  static std::map<long, std::unique_ptr<CycloField>> fields;
  std::lock_guard lock(mutex);
  auto it = fields.find(d);
  if (it == fields.end()) it = fields.emplace(d, std::unique_ptr<CycloField>(new CycloField(d))).first;
  return *it->second;
}

CycloField::CycloField(long d) : d_(d), degree_(euler_phi(d)), phi_(&cyclotomic_polynomial(d)) {
  const auto n = static_cast<std::size_t>(degree_);
  // x^k mod Phi for k = n .. 2n-2, built incrementally by multiplying by x.
  std::vector<Rational> cur(n);
  for (std::size_t k = 0; k < n; ++k) cur[k] = -phi_->coeff(k);  // x^n = -(lower terms)
  for (std::size_t k = n; k + 2 <= 2 * n; ++k) {
    reduction_table_.push_back(cur);
    Rational top = cur[n - 1];
    for (std::size_t j = n - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = Rational{};
    if (!top.is_zero()) {
      for (std::size_t j = 0; j < n; ++j) cur[j].sub_product(top, phi_->coeff(j));
    }
  }
  for (const auto& row : reduction_table_) {
    std::vector<mpz_class> zr;
    for (const auto& c : row) zr.push_back(c.numerator());
    int_reduction_.push_back(std::move(zr));
  }
  omega_powers_.reserve(static_cast<std::size_t>(d));
  for (long k = 0; k < d; ++k) omega_powers_.push_back(reduce(UniPoly::monomial(1, static_cast<std::size_t>(k))));
}

UniPoly CycloField::reduce(const UniPoly& p) const {
  const long n = degree_;
  if (p.degree() < n) return p;
  if (p.degree() > 2 * n - 2) return divmod(p, *phi_).remainder;
  const auto& c = p.coefficients();
  std::vector<Rational> out(c.begin(), c.begin() + n);
  for (std::size_t k = static_cast<std::size_t>(n); k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    const auto& row = reduction_table_[k - static_cast<std::size_t>(n)];
    for (std::size_t j = 0; j < row.size(); ++j) out[j].add_product(c[k], row[j]);
  }
  return UniPoly(std::move(out));
}

CycloNum CycloField::zero() const { return CycloNum(this, UniPoly{}); }
CycloNum CycloField::one() const { return CycloNum(this, UniPoly::constant(1)); }
CycloNum CycloField::from_rational(const Rational& r) const { return CycloNum(this, UniPoly::constant(r)); }
CycloNum CycloField::from_poly(const UniPoly& p) const { return CycloNum(this, reduce(p)); }

CycloNum CycloField::omega_power(long k) const {
  long r = k % d_;
  if (r < 0) r += d_;
  return CycloNum(this, omega_powers_[static_cast<std::size_t>(r)]);
}

std::complex<double> CycloField::omega_numeric() const {
  return std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(d_));
}

namespace {

// p = num / den with integer num, length n.
struct ZPoly {
  std::vector<mpz_class> num;
  mpz_class den = 1;
};

ZPoly to_zpoly(const UniPoly& p, std::size_t n) {
  ZPoly z;
  z.num.resize(n);
  const auto& cs = p.coefficients();
  for (const auto& c : cs) {
    if (!c.is_integer()) mpz_lcm(z.den.get_mpz_t(), z.den.get_mpz_t(), c.raw().get_den_mpz_t());
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].is_zero()) continue;
    if (cs[i].is_integer()) {
      z.num[i] = cs[i].raw().get_num() * z.den;
    } else {
      mpz_divexact(z.num[i].get_mpz_t(), z.den.get_mpz_t(), cs[i].raw().get_den_mpz_t());
      z.num[i] *= cs[i].raw().get_num();
    }
  }
  return z;
}

UniPoly from_zpoly(const std::vector<mpz_class>& num, const mpz_class& den) {
  std::vector<Rational> out;
  out.reserve(num.size());
  for (const auto& c : num) out.push_back(sgn(c) == 0 ? Rational{} : Rational(c, den));
  return UniPoly(std::move(out));
}

}  // namespace

const CycloField* CycloNum::merge_field(const CycloNum& o) const {
  if (field_ == nullptr) return o.field_;
  if (o.field_ != nullptr && o.field_ != field_) {
    throw FieldMismatch("cyclotomic operands from Q(w_" + std::to_string(field_->d()) + ") and Q(w_" +
                        std::to_string(o.field_->d()) + ")");
  }
  return field_;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  field_ = merge_field(o);
  residue_ += o.residue_;
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  field_ = merge_field(o);
  residue_ -= o.residue_;
  return *this;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
  field_ = merge_field(o);
  if (residue_.is_zero() || o.residue_.is_zero()) {
    residue_ = UniPoly{};
    return *this;
  }
  if (o.residue_.is_constant()) {
    residue_ *= o.residue_.leading();
    return *this;
  }
  if (residue_.is_constant()) {
    residue_ = o.residue_ * residue_.leading();
    return *this;
  }
  const auto n = static_cast<std::size_t>(field_->degree());
  const ZPoly a = to_zpoly(residue_, n);
  const ZPoly b = to_zpoly(o.residue_, n);
  std::vector<mpz_class> prod(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a.num[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(b.num[j]) != 0) mpz_addmul(prod[i + j].get_mpz_t(), a.num[i].get_mpz_t(), b.num[j].get_mpz_t());
    }
  }
  for (std::size_t k = n; k < prod.size(); ++k) {
    if (sgn(prod[k]) == 0) continue;
    const auto& row = field_->int_reduction_[k - n];
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(row[j]) != 0) mpz_addmul(prod[j].get_mpz_t(), prod[k].get_mpz_t(), row[j].get_mpz_t());
    }
  }
  prod.resize(n);
  residue_ = from_zpoly(prod, a.den * b.den);
  return *this;
}

CycloNum& CycloNum::operator*=(const Rational& r) {
  residue_ *= r;
  return *this;
}

CycloNum operator-(CycloNum a) {
  a.residue_ = -a.residue_;
  return a;
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in cyclotomic field");
  if (residue_.is_constant()) return CycloNum(field_, UniPoly::constant(residue_.leading().inverse()));
  // Solve (X * Y = 1 mod Phi) as a linear system over Z, X = den * residue,
  // by fraction-free elimination; then residue^-1 = den * Y.
  const auto n = static_cast<std::size_t>(field_->degree());
  const ZPoly x = to_zpoly(residue_, n);
  const auto& phi = field_->modulus().coefficients();
  // m[i][j] = coefficient i of X * w^j; last column is the right-hand side e_0.
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n + 1));
  std::vector<mpz_class> col = x.num;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
    const mpz_class top = col[n - 1];
    for (std::size_t i = n - 1; i > 0; --i) col[i] = col[i - 1];
    col[0] = 0;
    if (sgn(top) != 0) {
      for (std::size_t i = 0; i < n; ++i) col[i] -= top * phi[i].raw().get_num();
    }
  }
  m[0][n] = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(m[piv][k]) == 0) ++piv;
    if (piv == n) throw DivisionByZero("singular multiplication matrix in cyclotomic inverse");
    if (piv != k) std::swap(m[piv], m[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  std::vector<mpq_class> y(n);
  for (std::size_t i = n; i-- > 0;) {
    mpq_class acc(m[i][n]);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sgn(m[i][j]) != 0) acc -= mpq_class(m[i][j]) * y[j];
    }
    y[i] = acc / mpq_class(m[i][i]);
  }
  std::vector<Rational> out;
  out.reserve(n);
  for (auto& v : y) out.push_back(Rational(mpq_class(v * x.den)));
  return CycloNum(field_, UniPoly(std::move(out)));
}

std::complex<double> CycloNum::to_complex() const {
  if (field_ == nullptr) return 0.0;
  return residue_.evaluate(field_->omega_numeric());
}

CycloNum cyclo_add(const CycloNum& a, const CycloNum& b) { return a + b; }
CycloNum cyclo_mul(const CycloNum& a, const CycloNum& b) { return a * b; }
CycloNum cyclo_inv(const CycloNum& a) { return a.inverse(); }
CycloNum omega_power(const CycloField& field, long k) { return field.omega_power(k); }

// ---------------------------------------------------------------------------

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  unsigned __int128 r = 1;
  unsigned __int128 x = b % p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t residue_mod(const mpz_class& z, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == 8);
  return mpz_fdiv_ui(z.get_mpz_t(), p);  // nonnegative
}

}  // namespace

const ModularImage& ModularImage::of(long d) {
  static std::mutex mutex;
  static std::map<long, std::unique_ptr<ModularImage>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, std::unique_ptr<ModularImage>(new ModularImage(d))).first;
  return *it->second;
}

ModularImage::ModularImage(long d) {
  const auto ud = static_cast<std::uint64_t>(d);
  std::uint64_t k = ((std::uint64_t{1} << 62) - 1) / ud;
  for (;; --k) {
    const mpz_class cand(std::to_string(k * ud + 1));
    if (mpz_probab_prime_p(cand.get_mpz_t(), 30) != 0) {
      p_ = k * ud + 1;
      break;
    }
  }
  const UniPoly& phi = cyclotomic_polynomial(d);
  auto phi_at = [&](std::uint64_t x) {
    std::uint64_t acc = 0;
    for (int i = phi.degree(); i >= 0; --i) {
      const Rational& c = phi.coefficients()[static_cast<std::size_t>(i)];
      const std::uint64_t ci = residue_mod(c.numerator(), p_);  // integer coefficients
      acc = add(mul(acc, x), ci);
    }
    return acc;
  };
  // g^((p-1)/d) has order dividing d; it is primitive iff it is a root of Phi_d.
  for (std::uint64_t g = 2;; ++g) {
    const std::uint64_t r = pow_mod(g, (p_ - 1) / ud, p_);
    if (phi_at(r) == 0) {
      root_ = r;
      break;
    }
  }
  std::uint64_t x = 1;
  for (long i = 0; i < euler_phi(d); ++i) {
    powers_.push_back(x);
    x = mul(x, root_);
  }
}

std::uint64_t ModularImage::inv(std::uint64_t a) const { return pow_mod(a, p_ - 2, p_); }

std::optional<std::uint64_t> ModularImage::map(const CycloNum& x) const {
  std::uint64_t acc = 0;
  const auto& cs = x.residue().coefficients();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].is_zero()) continue;
    const std::uint64_t num = residue_mod(cs[i].numerator(), p_);
    std::uint64_t v = num;
    if (!cs[i].is_integer()) {
      const std::uint64_t den = residue_mod(cs[i].denominator(), p_);
      if (den == 0) return std::nullopt;
      v = mul(num, pow_mod(den, p_ - 2, p_));
    }
    acc = add(acc, mul(v, powers_[i]));
  }
  return acc;
}

}  // namespace owf
