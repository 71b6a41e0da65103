#include "owf/unipoly.hpp"

#include <algorithm>
#include <sstream>

namespace owf {

namespace {
const Rational kZero{};
}

UniPoly::UniPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

UniPoly::UniPoly(std::initializer_list<Rational> coefficients) : coeffs_(coefficients) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }

UniPoly UniPoly::monomial(const Rational& c, std::size_t power) {
  std::vector<Rational> v(power + 1);
  v[power] = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::x_pow_minus_one(std::size_t n) {
  std::vector<Rational> v(n + 1);
  v[0] = -1;
  v[n] = 1;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational UniPoly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational{}; }

const Rational& UniPoly::leading() const { return coeffs_.empty() ? kZero : coeffs_.back(); }

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  UniPoly r = *this;
  const Rational inv = leading().inverse();
  for (auto& c : r.coeffs_) c *= inv;
  return r;
}

UniPoly UniPoly::primitive_part() const {
  if (is_zero()) return {};
  mpz_class lcm_den = 1;
  for (const auto& c : coeffs_) {
    if (c.is_zero()) continue;
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.denominator().get_mpz_t());
  }
  std::vector<mpz_class> ints;
  ints.reserve(coeffs_.size());
  mpz_class content = 0;
  for (const auto& c : coeffs_) {
    mpz_class v = c.numerator() * (lcm_den / c.denominator());
    content = integer_gcd(content, abs(v));
    ints.push_back(std::move(v));
  }
  if (ints.back() < 0) content = -content;
  std::vector<Rational> out;
  out.reserve(ints.size());
  for (auto& v : ints) out.emplace_back(mpz_class(v / content));
  return UniPoly(std::move(out));
}

UniPoly UniPoly::shifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<Rational> v(k);
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return UniPoly(std::move(v));
}

Rational UniPoly::evaluate(const Rational& x) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> UniPoly::evaluate(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->to_double();
  return acc;
}

std::string UniPoly::to_string(std::string_view var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (!mag.is_one()) os << mag << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

UniPoly operator-(const UniPoly& a) {
  UniPoly r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j].add_product(a.coeffs_[i], b.coeffs_[j]);
  }
  return UniPoly(std::move(out));
}

std::strong_ordering operator<=>(const UniPoly& a, const UniPoly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (int k = a.degree(); k >= 0; --k) {
    const auto i = static_cast<std::size_t>(k);
    if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

DivMod divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.degree() < b.degree()) return {UniPoly{}, a};
  std::vector<Rational> rem = a.coefficients();
  const auto bd = static_cast<std::size_t>(b.degree());
  std::vector<Rational> quot(rem.size() - bd);
  const Rational inv_lead = b.leading().inverse();
  const auto& bc = b.coefficients();
  for (std::size_t k = rem.size(); k-- > bd;) {
    if (rem[k].is_zero()) continue;
    Rational factor = rem[k] * inv_lead;
    const std::size_t shift = k - bd;
    for (std::size_t j = 0; j <= bd; ++j) rem[shift + j].sub_product(factor, bc[j]);
    quot[shift] = std::move(factor);
  }
  rem.resize(bd);
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a;
  UniPoly y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).remainder;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(1), s1;
  UniPoly t0, t1 = UniPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UniPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UniPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {UniPoly{}, UniPoly{}, UniPoly{}};
  const Rational inv = r0.leading().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

bool divides(const UniPoly& b, const UniPoly& a) { return divmod(a, b).remainder.is_zero(); }

}  // namespace owf
