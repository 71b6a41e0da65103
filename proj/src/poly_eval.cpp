#include "owf/poly_eval.hpp"

#include <algorithm>
#include <sstream>

namespace owf {

const MultilinearCubic& MultilinearCubic::normalized() {
  static const MultilinearCubic cubic = [] {
    MultilinearCubic m;
    auto var = [](std::size_t i) {
      AffineForm<Rational> f;
      f.linear[i] = 1;
      return f;
    };
    m.coefficients[0] = var(0);  // a123
    m.coefficients[1] = var(1);  // a132
    m.coefficients[2] = var(2);  // a213
    m.coefficients[3] = var(3);  // a231
    AffineForm<Rational> a312;
    a312.constant = 1;
    a312.linear = {Rational(-1), Rational(0), Rational(0), Rational(-1)};
    AffineForm<Rational> a321;
    a321.constant = -1;
    a321.linear = {Rational(0), Rational(-1), Rational(-1), Rational(0)};
    m.coefficients[4] = a312;
    m.coefficients[5] = a321;
    return m;
  }();
  return cubic;
}

namespace {

template <class S, class Fmt>
std::string render(const AffineForm<S>& form, Fmt&& fmt) {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const S& c, std::string_view name) {
    if (c.is_zero()) return;
    if (!first) os << " + ";
    first = false;
    os << "(" << fmt(c) << ")";
    if (!name.empty()) os << "*" << name;
  };
  emit(form.constant, "");
  for (std::size_t i = 0; i < 4; ++i) emit(form.linear[i], kFreeCoefficientNames[i]);
  if (first) return "0";
  return os.str();
}

}  // namespace

std::string to_string(const AffineForm<CycloNum>& form) {
  return render(form, [](const CycloNum& c) { return c.to_string(); });
}
std::string to_string(const AffineForm<UniPoly>& form) {
  return render(form, [](const UniPoly& c) { return c.to_string("w"); });
}
std::string to_string(const AffineForm<LaurentPoly>& form) {
  return render(form, [](const LaurentPoly& c) { return c.to_string(); });
}
std::string to_string(const AffineForm<Rational>& form) {
  return render(form, [](const Rational& c) { return c.to_string(); });
}

UnitEvaluation evaluate_on_units(const CycloField& field, const std::array<BasisUnitary, 3>& triple) {
  const long d = field.d();
  for (const auto& u : triple) {
    if (u.d != d) throw DimensionMismatch("evaluate_on_units: unit dimension differs from field");
  }
  const auto& cubic = MultilinearCubic::normalized();
  std::array<std::vector<Rational>, 5> acc;
  for (auto& v : acc) v.assign(static_cast<std::size_t>(d), Rational{});
  BasisUnitary target;
  for (std::size_t w = 0; w < kWords.size(); ++w) {
    const std::array<BasisUnitary, 3> word{triple[kWords[w][0]], triple[kWords[w][1]], triple[kWords[w][2]]};
    const auto ph = word_product_phase(word);
    if (w == 0) target = ph.unit;
    const auto e = static_cast<std::size_t>(ph.exponent);
    const auto& form = cubic.coefficients[w];
    acc[0][e] += form.constant;
    for (std::size_t i = 0; i < 4; ++i) acc[i + 1][e] += form.linear[i];
  }
  UnitEvaluation out;
  out.target = target;
  out.coeff.constant = field.from_poly(UniPoly(std::move(acc[0])));
  for (std::size_t i = 0; i < 4; ++i) out.coeff.linear[i] = field.from_poly(UniPoly(std::move(acc[i + 1])));
  return out;
}

ScaledUnitary evaluate_at_point(const CycloField& field, const std::array<BasisUnitary, 3>& triple,
                                const ParamPoint<CycloNum>& point) {
  const auto ev = evaluate_on_units(field, triple);
  CycloNum value = ev.coeff.constant;
  for (std::size_t i = 0; i < 4; ++i) value += ev.coeff.linear[i] * point[i];
  if (value.is_zero()) return {field.zero(), BasisUnitary(0, 0, field.d())};
  return {value, ev.target};
}

std::array<Rational, 6> full_coefficients(const ParamPoint<Rational>& point) {
  const auto& cubic = MultilinearCubic::normalized();
  std::array<Rational, 6> out;
  for (std::size_t w = 0; w < 6; ++w) out[w] = evaluate_form(cubic.coefficients[w], point);
  return out;
}

DenseMatrix evaluate_dense(const std::array<CycloNum, 6>& coefficients, const std::array<DenseMatrix, 3>& args) {
  const CycloField& field = args[0].field();
  DenseMatrix sum(field);
  for (std::size_t w = 0; w < 6; ++w) {
    if (coefficients[w].is_zero()) continue;
    sum += (args[kWords[w][0]] * args[kWords[w][1]] * args[kWords[w][2]]) * coefficients[w];
  }
  return sum;
}

ParamEvaluation evaluate_param_even(Parity c_parity, const std::array<ParamUnitary, 3>& triple, Parity q_parity) {
  const auto wiggles = std::count_if(triple.begin(), triple.end(), [](const auto& u) { return u.wiggle; });
  if (wiggles != 1) throw std::invalid_argument("evaluate_param_even: exactly one wiggle slot required");
  const ParamContext ctx{c_parity, q_parity};
  const auto& cubic = MultilinearCubic::normalized();
  ParamEvaluation out;
  for (std::size_t w = 0; w < kWords.size(); ++w) {
    const std::array<ParamUnitary, 3> word{triple[kWords[w][0]], triple[kWords[w][1]], triple[kWords[w][2]]};
    const auto prod = param_product(word, ctx);
    if (w == 0) out.target = prod.target;
    const auto& form = cubic.coefficients[w];
    out.laurent.constant += prod.scalar * form.constant;
    for (std::size_t i = 0; i < 4; ++i) out.laurent.linear[i] += prod.scalar * form.linear[i];
  }
  long min_low = 0;
  auto track = [&](const LaurentPoly& x) {
    if (!x.is_zero()) min_low = std::min(min_low, x.low());
  };
  track(out.laurent.constant);
  for (const auto& x : out.laurent.linear) track(x);
  out.shift = -min_low;
  out.coeff = out.laurent.map([&](const LaurentPoly& x) { return x.times_omega_power(out.shift); });
  return out;
}

// ---------------------------------------------------------------------------

bool SixLinear::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Rational& r) { return r.is_zero(); });
}

SixLinear& SixLinear::operator+=(const SixLinear& o) {
  for (std::size_t i = 0; i < 6; ++i) c[i] += o.c[i];
  return *this;
}

SixLinear& SixLinear::operator-=(const SixLinear& o) {
  for (std::size_t i = 0; i < 6; ++i) c[i] -= o.c[i];
  return *this;
}

SixLinear& SixLinear::operator*=(const Rational& r) {
  for (auto& x : c) x *= r;
  return *this;
}

SixLinear SixLinear::symbol(std::size_t word) {
  SixLinear s;
  s.c.at(word) = 1;
  return s;
}

std::string SixLinear::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < 6; ++i) {
    if (c[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (!c[i].is_one()) os << c[i] << "*";
    os << kWordNames[i];
  }
  return first ? "0" : os.str();
}

void TPoly::trim() {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

bool TPoly::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const SixLinear& s) { return s.is_zero(); });
}

TPoly operator+(const TPoly& a, const TPoly& b) {
  TPoly r;
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  r.trim();
  return r;
}

TPoly operator-(const TPoly& a, const TPoly& b) {
  TPoly r;
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
  r.trim();
  return r;
}

TPoly operator*(const TPoly& a, const UniPoly& t_poly) {
  TPoly r;
  if (a.coeffs.empty() || t_poly.is_zero()) return r;
  r.coeffs.resize(a.coeffs.size() + t_poly.size() - 1);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < t_poly.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * t_poly.coeff(j);
  }
  r.trim();
  return r;
}

bool operator==(const TPoly& a, const TPoly& b) { return (a - b).is_zero(); }

std::string TPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs[k].to_string() << ")";
    if (k == 1) os << "*t";
    if (k > 1) os << "*t^" << k;
  }
  return os.str();
}

SixLinear substitute(const SixLinear& x, const std::vector<Substitution>& subs) {
  SixLinear cur = x;
  for (const auto& s : subs) {
    const Rational k = cur.c.at(s.word);
    if (k.is_zero()) continue;
    cur.c[s.word] = 0;
    cur += s.value * k;
  }
  return cur;
}

TPoly substitute(const TPoly& x, const std::vector<Substitution>& subs) {
  TPoly r;
  for (const auto& c : x.coeffs) r.coeffs.push_back(substitute(c, subs));
  r.trim();
  return r;
}

FormalEvaluation evaluate_formal_wiggle(const std::array<FormalSlot, 3>& triple) {
  const auto wiggles = std::count_if(triple.begin(), triple.end(), [](const auto& s) { return s.wiggle; });
  if (wiggles != 1) throw std::invalid_argument("evaluate_formal_wiggle: exactly one wiggle slot required");
  FormalEvaluation out;
  for (const auto& s : triple) {
    if (s.wiggle) continue;
    if (s.p != 0) throw std::invalid_argument("evaluate_formal_wiggle: fixed slot must have p = 0");
    out.target_q_offset += s.q;
  }
  for (std::size_t w = 0; w < kWords.size(); ++w) {
    // Only the wiggle carries a nonzero row label, so the phase is p times
    // the column labels of the fixed slots that follow it.
    long t_power = 0;
    bool seen_wiggle = false;
    for (int slot : kWords[w]) {
      const auto& s = triple[static_cast<std::size_t>(slot)];
      if (s.wiggle) {
        seen_wiggle = true;
      } else if (seen_wiggle) {
        t_power += s.q;
      }
    }
    if (t_power < 0) throw std::invalid_argument("evaluate_formal_wiggle: negative fixed column index");
    const auto k = static_cast<std::size_t>(t_power);
    if (out.coeff.coeffs.size() <= k) out.coeff.coeffs.resize(k + 1);
    out.coeff.coeffs[k] += SixLinear::symbol(w);
  }
  out.coeff.trim();
  return out;
}

}  // namespace owf
