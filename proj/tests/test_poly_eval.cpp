#include "owf/poly_eval.hpp"
#include "support.hpp"

#include "catch_amalgamated.hpp"

using namespace owf;

namespace {

using Coeffs = std::vector<Rational>;

// Form with raw (unreduced) polynomials in w: constant, then a123, a132, a213, a231.
AffineForm<CycloNum> raw_form(const CycloField& f, const std::array<Coeffs, 5>& parts) {
  AffineForm<CycloNum> out;
  out.constant = f.from_poly(UniPoly(parts[0]));
  for (std::size_t i = 0; i < 4; ++i) out.linear[i] = f.from_poly(UniPoly(parts[i + 1]));
  return out;
}

AffineForm<LaurentPoly> laurent_form(const std::array<LaurentPoly, 5>& parts) {
  AffineForm<LaurentPoly> out;
  out.constant = parts[0];
  for (std::size_t i = 0; i < 4; ++i) out.linear[i] = parts[i + 1];
  return out;
}

LaurentPoly L(long c) { return LaurentPoly::constant(c); }
LaurentPoly L(Coeffs p, long low = 0) { return LaurentPoly(UniPoly(std::move(p)), low); }

ParamUnitary pu(long pa, long pb, long qa, long qb, bool wiggle = false) { return {{pa, pb}, {qa, qb}, wiggle}; }
ParamUnitary wig(long pa, long pb, long qa = 0, long qb = 0) { return pu(pa, pb, qa, qb, true); }

std::array<CycloNum, 6> in_field(const std::array<Rational, 6>& a, const CycloField& f) {
  std::array<CycloNum, 6> out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = f.from_rational(a[i]);
  return out;
}

// The printed worked d=3 rows swap the labels a231 and a312. In the free
// coordinates that swap is a231 -> 1 - a123 - a231.
AffineForm<CycloNum> swap_231_312(const AffineForm<CycloNum>& g) {
  AffineForm<CycloNum> out = g;
  out.constant += g.linear[3];
  out.linear[0] -= g.linear[3];
  out.linear[3] = -g.linear[3];
  return out;
}

}  // namespace

TEST_CASE("normalized cubic") {
  const auto& m = MultilinearCubic::normalized();
  AffineForm<Rational> cyc = m.coefficients[0] + m.coefficients[3] + m.coefficients[4];
  CHECK(cyc.is_constant());
  CHECK(cyc.constant == Rational(1));
  AffineForm<Rational> all;
  for (const auto& c : m.coefficients) all += c;
  CHECK(all.is_identically_zero());
  const auto six = full_coefficients({Rational(1), Rational(0), Rational(0), Rational(0)});
  CHECK(six == std::array<Rational, 6>{1, 0, 0, 0, 0, -1});
}

TEST_CASE("the d=3 worked family, all six outputs (relabeled)") {
  const auto& f = CycloField::of(3);
  const BasisUnitary u20{2, 0, 3}, u11{1, 1, 3};
  struct Row {
    BasisUnitary wiggle, target;
    std::array<Coeffs, 5> raw;
  };
  const Coeffs base{-1, 0, 1};  // -1 + w^2
  const std::vector<Row> rows{
      {{0, 2, 3}, {0, 0, 3}, {base, {}, {}, {}, {}}},
      {{0, 0, 3}, {0, 1, 3}, {base, {}, {}, {-1, 0, 1}, {1, 0, -1}}},
      {{0, 1, 3}, {0, 2, 3}, {base, {}, {}, {-1, 1}, {0, 1, -1}}},
      {{1, 2, 3}, {1, 0, 3}, {base, {1, 0, -1}, {-1, 1}, {-1, 1}, {}}},
      {{1, 0, 3}, {1, 1, 3}, {base, {1, 0, -1}, {-1, 1}, {}, {1, 0, -1}}},
      {{1, 1, 3}, {1, 2, 3}, {base, {1, 0, -1}, {-1, 1}, {-1, 0, 1}, {0, 1, -1}}},
  };
  for (const auto& r : rows) {
    const auto ev = evaluate_on_units(f, {r.wiggle, u20, u11});
    INFO(r.wiggle.to_string());
    CHECK(ev.target == r.target);
    CHECK(swap_231_312(ev.coeff) == raw_form(f, r.raw));
  }
  // the first one is the parameter-free -2 - w
  const auto first = evaluate_on_units(f, {BasisUnitary{0, 2, 3}, u20, u11});
  CHECK(first.coeff.is_constant_nonzero());
  CHECK(first.coeff.constant == f.from_poly(UniPoly{-2, -1}));
}

TEST_CASE("identity triple gives the zero form") {
  for (long d : {2, 3, 6}) {
    const auto& f = CycloField::of(d);
    const BasisUnitary e{0, 0, d};
    const auto ev = evaluate_on_units(f, {e, e, e});
    CHECK(ev.target == e);
    CHECK(ev.coeff.is_identically_zero());
    std::mt19937_64 rng(5);
    CHECK(evaluate_at_point(f, {e, e, e}, test::random_point(f, rng)).coeff.is_zero());
  }
}

TEST_CASE("point evaluation") {
  const auto& f = CycloField::of(3);
  const BasisUnitary u20{2, 0, 3}, u11{1, 1, 3};
  const ParamPoint<CycloNum> s3{f.from_rational(Rational(1, 3)), f.from_rational(Rational(-1, 3)),
                                f.from_rational(Rational(-1, 3)), f.from_rational(Rational(1, 3))};
  // Of the six outputs, the S3 point kills the last one, not the second.
  CHECK(evaluate_at_point(f, {BasisUnitary{1, 1, 3}, u20, u11}, s3).coeff.is_zero());
  const auto second = evaluate_at_point(f, {BasisUnitary{0, 0, 3}, u20, u11}, s3);
  CHECK(second.coeff == f.from_poly(UniPoly{Rational(-2, 3), Rational(-1, 3)}));

  const ParamPoint<CycloNum> comm{f.one(), f.zero(), f.zero(), f.zero()};
  const auto r = evaluate_at_point(f, {BasisUnitary{0, 2, 3}, u20, u11}, comm);
  CHECK(r.unit == BasisUnitary(0, 0, 3));
  CHECK(r.coeff == f.from_poly(UniPoly{-2, -1}));
}

TEST_CASE("unit evaluation agrees with dense evaluation") {
  std::mt19937_64 rng(31);
  for (long d = 2; d <= 6; ++d) {
    const auto& f = CycloField::of(d);
    std::uniform_int_distribution<long> idx(0, d - 1);
    for (int t = 0; t < 25; ++t) {
      const std::array<BasisUnitary, 3> tr{BasisUnitary{idx(rng), idx(rng), d}, BasisUnitary{idx(rng), idx(rng), d},
                                           BasisUnitary{idx(rng), idx(rng), d}};
      ParamPoint<Rational> pt;
      for (auto& x : pt) x = test::small_rational(rng, 5);
      ParamPoint<CycloNum> cp;
      for (std::size_t i = 0; i < 4; ++i) cp[i] = f.from_rational(pt[i]);
      const auto sym = evaluate_at_point(f, tr, cp);
      const auto dense = evaluate_dense(in_field(full_coefficients(pt), f),
                                        {realize(tr[0], f), realize(tr[1], f), realize(tr[2], f)});
      INFO("d=" << d << " " << tr[0].to_string() << tr[1].to_string() << tr[2].to_string());
      CHECK(dense == realize(sym.unit, f) * sym.coeff);
      // and the affine form evaluated at the point is the same scalar
      const auto ev = evaluate_on_units(f, tr);
      CHECK(evaluate_form(ev.coeff, cp) == sym.coeff);
    }
  }
}

TEST_CASE("parametric evaluation: table rows") {
  // c odd: f(u^c_0, u^c_c, u^0_q)
  const std::array<ParamUnitary, 3> h1{pu(0, 1, 0, 0), pu(0, 1, 0, 1), wig(0, 0)};
  const auto even = evaluate_param_even(Parity::Odd, h1, Parity::Even);
  CHECK(even.laurent == laurent_form({L(-2), L(0), L(-2), L(0), L(2)}));
  CHECK(even.target.p.normalized() == LinearIndex{0, 0});
  CHECK(even.target.q.normalized() == LinearIndex{0, 1});
  const auto odd = evaluate_param_even(Parity::Odd, h1, Parity::Odd);
  CHECK(odd.laurent == laurent_form({L(-2), L(0), L(0), L(0), L(0)}));

  // c odd: f(u^1_q, u^c_{c-1}, u^c_c), q even: needs a shift by w
  const std::array<ParamUnitary, 3> h5{wig(1, 0), pu(0, 1, -1, 1), pu(0, 1, 0, 1)};
  const auto r = evaluate_param_even(Parity::Odd, h5, Parity::Even);
  CHECK(r.laurent == laurent_form({L({-1, -1}, -1), L(0), L({1, -1}, -1), L(0), L({1, -1}, -1)}));
  CHECK(r.shift == 1);
  AffineForm<UniPoly> shifted;
  shifted.constant = UniPoly{-1, -1};
  shifted.linear[1] = UniPoly{1, -1};
  shifted.linear[3] = UniPoly{1, -1};
  CHECK(r.coeff == shifted);
  CHECK(r.target.p.normalized() == LinearIndex{1, 0});
  CHECK(r.target.q.normalized() == LinearIndex{-1, 0});

  // c even: f(u^c_1, u^c_c, u^0_q), q odd
  const std::array<ParamUnitary, 3> t4h1{pu(0, 1, 1, 0), pu(0, 1, 0, 1), wig(0, 0)};
  const auto t4 = evaluate_param_even(Parity::Even, t4h1, Parity::Odd);
  CHECK(t4.laurent == laurent_form({L(2), L(0), L(0), L(0), L(0)}));
  CHECK(t4.target.q.normalized() == LinearIndex{1, 1});
}

TEST_CASE("parametric evaluation agrees with concrete instances") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> small(-2, 2), bit(0, 1), slot(0, 2);
  int compared = 0;
  for (int t = 0; t < 300; ++t) {
    std::array<ParamUnitary, 3> tr;
    const auto ws = static_cast<std::size_t>(slot(rng));
    for (std::size_t k = 0; k < 3; ++k) {
      // fixed units have p in {0, c} (+0/1), wiggle p in {0, 1}
      tr[k] = k == ws ? wig(bit(rng), 0) : pu(bit(rng) * small(rng) % 2, bit(rng), small(rng), bit(rng));
    }
    for (Parity cp : {Parity::Odd, Parity::Even}) {
      for (Parity qp : {Parity::Odd, Parity::Even}) {
        ParamEvaluation pe;
        try {
          pe = evaluate_param_even(cp, tr, qp);
        } catch (const NotParityReducible&) {
          continue;
        }
        for (long c : cp == Parity::Odd ? std::vector<long>{3, 5} : std::vector<long>{2, 4, 6}) {
          const auto& f = CycloField::of(2 * c);
          for (long wq = parity_value(qp); wq < 2 * c; wq += 2) {
            std::array<BasisUnitary, 3> conc;
            for (std::size_t k = 0; k < 3; ++k) conc[k] = tr[k].instantiate(c, wq);
            const auto ev = evaluate_on_units(f, conc);
            INFO(tr[0].to_string() << tr[1].to_string() << tr[2].to_string() << " c=" << c << " q=" << wq);
            CHECK(ev.target == pe.target.instantiate(c, wq));
            CHECK(ev.coeff == pe.laurent.map([&](const LaurentPoly& x) { return x.in_field(f); }));
            // shifted form is w^shift times the Laurent one
            const auto ws_ = f.omega_power(pe.shift);
            auto scaled = ev.coeff.map([&](const CycloNum& x) { return x * ws_; });
            CHECK(scaled == pe.coeff.map([&](const UniPoly& x) { return f.from_poly(x); }));
            ++compared;
          }
        }
      }
    }
  }
  CHECK(compared > 500);
}

TEST_CASE("formal wiggle agrees with concrete evaluation") {
  std::mt19937_64 rng(51);
  const std::vector<std::array<FormalSlot, 3>> triples{
      {FormalSlot{false, 0, 0}, FormalSlot{false, 0, 1}, FormalSlot{true, 0, 0}},
      {FormalSlot{false, 0, 1}, FormalSlot{false, 0, 0}, FormalSlot{true, 0, 0}},
      {FormalSlot{false, 0, 1}, FormalSlot{true, 0, 0}, FormalSlot{false, 0, 0}},
      {FormalSlot{false, 0, 1}, FormalSlot{true, 0, 0}, FormalSlot{false, 0, 1}},
      {FormalSlot{false, 0, 1}, FormalSlot{false, 0, 1}, FormalSlot{true, 0, 0}},
      {FormalSlot{true, 0, 0}, FormalSlot{false, 0, 2}, FormalSlot{false, 0, 1}},
  };
  for (const auto& tr : triples) {
    const auto fe = evaluate_formal_wiggle(tr);
    for (long d : {3, 5, 7}) {
      const auto& f = CycloField::of(d);
      for (long p = 0; p < d; ++p) {
        const long q = (p * 2 + 1) % d;
        std::array<BasisUnitary, 3> conc;
        for (std::size_t k = 0; k < 3; ++k) {
          conc[k] = tr[k].wiggle ? BasisUnitary(p, q, d) : BasisUnitary(0, tr[k].q, d);
        }
        ParamPoint<Rational> pt;
        for (auto& x : pt) x = test::small_rational(rng, 5);
        const auto six = full_coefficients(pt);
        ParamPoint<CycloNum> cp;
        for (std::size_t i = 0; i < 4; ++i) cp[i] = f.from_rational(pt[i]);
        const auto sym = evaluate_at_point(f, conc, cp);
        // sum_k (coeffs[k] . six) t^k with t = w^p
        CycloNum want = f.zero();
        for (std::size_t k = 0; k < fe.coeff.coeffs.size(); ++k) {
          Rational lin;
          for (std::size_t i = 0; i < 6; ++i) lin += fe.coeff.coeffs[k].c[i] * six[i];
          want += f.omega_power(p * static_cast<long>(k)) * lin;
        }
        INFO("d=" << d << " p=" << p);
        if (!sym.coeff.is_zero()) CHECK(sym.unit == BasisUnitary(p, q + fe.target_q_offset, d));
        CHECK(sym.coeff == want);
      }
    }
  }
  // identity fixed slots: the sum of all six symbols
  const auto z = evaluate_formal_wiggle({FormalSlot{false, 0, 0}, FormalSlot{false, 0, 0}, FormalSlot{true, 0, 0}});
  REQUIRE(z.coeff.coeffs.size() == 1);
  for (const auto& c : z.coeff.coeffs[0].c) CHECK(c == Rational(1));
  CHECK_THROWS(evaluate_formal_wiggle({FormalSlot{false, 1, 0}, FormalSlot{false, 0, 0}, FormalSlot{true, 0, 0}}));
}
