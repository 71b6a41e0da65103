#include "owf/certificates.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace owf {

namespace {

// --- Q[alpha, beta, gamma] and 3x3 matrices over it ----------------------------

using Exps = std::array<int, 3>;

struct MPoly {
  std::map<Exps, Rational> terms;

  static MPoly constant(const Rational& c) {
    MPoly p;
    if (!c.is_zero()) p.terms[{0, 0, 0}] = c;
    return p;
  }
  static MPoly var(int i, const Rational& c = Rational(1)) {
    MPoly p;
    Exps e{0, 0, 0};
    e[static_cast<std::size_t>(i)] = 1;
    p.terms[e] = c;
    return p;
  }
  void clean() {
    std::erase_if(terms, [](const auto& kv) { return kv.second.is_zero(); });
  }
  MPoly& operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.terms) terms[e] += c;
    clean();
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out;
    for (const auto& [ea, ca] : a.terms) {
      for (const auto& [eb, cb] : b.terms) {
        out.terms[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}].add_product(ca, cb);
      }
    }
    out.clean();
    return out;
  }
  friend MPoly operator*(MPoly a, const Rational& r) {
    for (auto& [e, c] : a.terms) c *= r;
    a.clean();
    return a;
  }
  friend bool operator==(const MPoly&, const MPoly&) = default;
  [[nodiscard]] std::string to_string() const {
    if (terms.empty()) return "0";
    static const char* names[3] = {"alpha", "beta", "gamma"};
    std::string s;
    for (const auto& [e, c] : terms) {
      if (!s.empty()) s += " + ";
      s += c.to_string();
      for (std::size_t i = 0; i < 3; ++i) {
        if (e[i]) s += "*" + std::string(names[i]) + (e[i] > 1 ? "^" + std::to_string(e[i]) : "");
      }
    }
    return s;
  }
};

using M3 = std::array<std::array<MPoly, 3>, 3>;

M3 mul(const M3& a, const M3& b) {
  M3 out{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

M3 add_scaled(const M3& a, const M3& b, const Rational& s) {
  M3 out = a;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out[i][j] += b[i][j] * s;
  }
  return out;
}

M3 scaled(const M3& a, const Rational& s) { return add_scaled(M3{}, a, s); }

M3 from_ints(const std::array<std::array<long, 3>, 3>& v) {
  M3 out{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out[i][j] = MPoly::constant(Rational(v[i][j]));
  }
  return out;
}

// S3 = sum over permutations of sign * x_s(1) x_s(2) x_s(3).
M3 s3(const std::array<M3, 3>& x) {
  static constexpr std::array<std::pair<std::array<int, 3>, int>, 6> perms{{
      {{0, 1, 2}, 1}, {{0, 2, 1}, -1}, {{1, 0, 2}, -1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}, {{2, 1, 0}, -1}}};
  M3 acc{};
  for (const auto& [p, sign] : perms) {
    const auto prod = mul(mul(x[static_cast<std::size_t>(p[0])], x[static_cast<std::size_t>(p[1])]),
                          x[static_cast<std::size_t>(p[2])]);
    acc = add_scaled(acc, prod, Rational(sign));
  }
  return acc;
}

std::string m3_to_string(const M3& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < 3; ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < 3; ++j) s += (j ? ", " : "") + m[i][j].to_string();
  }
  return s + "]";
}

MPoly lin(long a, long b, long g, long k = 0) {
  return MPoly::var(0, Rational(a)) + MPoly::var(1, Rational(b)) + MPoly::var(2, Rational(g)) +
         MPoly::constant(Rational(k));
}

const MPoly kAlpha = MPoly::var(0);
const MPoly kBeta = MPoly::var(1);
const MPoly kGamma = MPoly::var(2);

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Report verify_jordan_s3() {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.subject = "S3 Jordan-form identities over Q[alpha, beta, gamma]";
  const M3 n3 = from_ints({{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}});

  auto check = [&](const std::string& name, const M3& got, const M3& want) {
    rep.add(name, got == want, got == want ? m3_to_string(want) : "got " + m3_to_string(got));
  };

  {
    // diag(alpha, beta, gamma)
    M3 third{};
    third[0][0] = MPoly::var(0, Rational(5, 2)) + MPoly::var(1, Rational(-2)) + kGamma;
    third[1][1] = lin(2, -4, 2);
    third[2][2] = lin(1, -2, -2);
    M3 want{};
    want[0][0] = kAlpha;
    want[1][1] = kBeta;
    want[2][2] = kGamma;
    check("diagonal", s3({n3, from_ints({{{0, 0, 0}, {2, 0, 0}, {0, 1, 0}}}), scaled(third, Rational(1, 6))}),
          want);

    // Zero third argument kills every term.
    check("diagonal, alpha = beta = gamma = 0",
          s3({n3, from_ints({{{0, 0, 0}, {2, 0, 0}, {0, 1, 0}}}), M3{}}), M3{});
  }
  {
    // one 2x2 block plus an eigenvalue
    M3 third{};
    third[0][0] = MPoly::constant(Rational(3));
    third[1][0] = kAlpha;
    third[2][1] = kBeta;
    M3 want{};
    want[0][0] = kAlpha;
    want[0][1] = MPoly::constant(Rational(1));
    want[1][1] = kAlpha;
    want[2][2] = kBeta;
    check("block plus eigenvalue",
          s3({n3, from_ints({{{-1, 0, 0}, {0, 1, 0}, {0, 0, 2}}}), scaled(third, Rational(1, 3))}), want);
  }
  {
    // full Jordan block
    M3 third{};
    third[0][0] = lin(1, 0, 0, -1);
    third[1][1] = MPoly::constant(Rational(-2));
    third[2][2] = lin(-1, 0, 0, -1);
    M3 want{};
    want[0][0] = kAlpha;
    want[1][1] = kAlpha;
    want[2][2] = kAlpha;
    want[0][1] = MPoly::constant(Rational(1));
    want[1][2] = MPoly::constant(Rational(1));
    check("full Jordan block",
          s3({n3, from_ints({{{1, 0, 0}, {1, 0, 0}, {0, 1, -1}}}), scaled(third, Rational(1, 2))}), want);
  }
  rep.result = rep.passed() ? "all identities hold" : "identity failure";
  rep.seconds = since(t0);
  return rep;
}

Report verify_appendix() {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.subject = "traceless-case identities in the formal-wiggle ring";

  auto sym = [](std::size_t w) { return SixLinear::symbol(w); };
  enum : std::size_t { A123, A132, A213, A231, A312, A321 };
  const UniPoly one_minus_t{Rational(1), Rational(-1)};
  const UniPoly one_minus_t_sq = one_minus_t * one_minus_t;

  auto tpoly = [](const SixLinear& c) {
    TPoly p;
    p.coeffs = {c};
    return p;
  };
  const FormalSlot W{true, 0, 0};
  auto u0 = [](long q) { return FormalSlot{false, 0, q}; };

  // Coefficients sum to zero: a321 = -(the other five).
  SixLinear minus_rest;
  for (std::size_t w = 0; w < 5; ++w) minus_rest -= sym(w);
  const std::vector<Substitution> sum_zero{{A321, minus_rest}};

  struct Case {
    std::string name;
    std::array<FormalSlot, 3> args;
    SixLinear factor;
  };
  const std::vector<Case> sums{
      {"f(u^0_0, u^0_1, u^p_q)", {u0(0), u0(1), W}, sym(A123) + sym(A213) + sym(A231)},
      {"f(u^0_1, u^0_0, u^p_q)", {u0(1), u0(0), W}, sym(A123) + sym(A132) + sym(A213)},
      {"f(u^0_1, u^p_q, u^0_0)", {u0(1), W, u0(0)}, sym(A123) + sym(A132) + sym(A312)},
  };
  for (const auto& c : sums) {
    const auto ev = evaluate_formal_wiggle(c.args);
    const auto got = substitute(ev.coeff, sum_zero);
    const auto want = tpoly(c.factor) * one_minus_t;
    rep.add(c.name + " = (" + c.factor.to_string() + ")(1-t) u^p_{q+1}", got == want && ev.target_q_offset == 1,
            got == want ? "" : "got " + got.to_string());
  }

  // All three sums vanish: solve for a213, a231, a312, a321.
  const std::vector<Substitution> solved{
      {A213, sym(A123) * Rational(-1) - sym(A132)},
      {A231, sym(A132)},
      {A312, sym(A123) * Rational(-1) - sym(A132)},
      {A321, sym(A123)},
  };
  const std::vector<Case> squares{
      {"f(u^0_1, u^p_q, u^0_1)", {u0(1), W, u0(1)}, sym(A123) * Rational(-1)},
      {"f(u^0_1, u^0_1, u^p_q)", {u0(1), u0(1), W}, sym(A132) * Rational(-1)},
  };
  for (const auto& c : squares) {
    const auto ev = evaluate_formal_wiggle(c.args);
    const auto got = substitute(ev.coeff, solved);
    const auto want = tpoly(c.factor) * one_minus_t_sq;
    rep.add(c.name + " = (" + c.factor.to_string() + ")(1-t)^2 u^p_{q+2}", got == want && ev.target_q_offset == 2,
            got == want ? "" : "got " + got.to_string());
  }

  // a123 = a132 = 0 on top of that leaves nothing.
  auto forced = solved;
  forced.push_back({A123, SixLinear{}});
  forced.push_back({A132, SixLinear{}});
  bool all_zero = true;
  std::string residue;
  for (std::size_t w = 0; w < 6; ++w) {
    const auto v = substitute(sym(w), forced);
    if (!v.is_zero()) {
      all_zero = false;
      residue += std::string(kWordNames[w]) + " = " + v.to_string() + " ";
    }
  }
  rep.add("a123 = a132 = 0 forces all six coefficients to zero", all_zero, residue);
  rep.result = rep.passed() ? "all identities hold" : "identity failure";
  rep.seconds = since(t0);
  return rep;
}

std::string to_string(CoefficientClass c) {
  switch (c) {
    case CoefficientClass::FullCandidate: return "full-candidate";
    case CoefficientClass::SumOfCommutators: return "sum-of-commutators";
    case CoefficientClass::Zero: return "zero";
  }
  return "?";
}

CoefficientClass classify_coefficients(const std::array<Rational, 6>& a) {
  if (std::all_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); })) return CoefficientClass::Zero;
  // cyclic classes {123, 231, 312} and {132, 213, 321}
  const Rational s1 = a[0] + a[3] + a[4];
  const Rational s2 = a[1] + a[2] + a[5];
  return s1.is_zero() && s2.is_zero() ? CoefficientClass::SumOfCommutators : CoefficientClass::FullCandidate;
}

}  // namespace owf
