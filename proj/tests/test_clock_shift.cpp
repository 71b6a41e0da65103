#include "owf/clock_shift.hpp"
#include "support.hpp"

#include "catch_amalgamated.hpp"

using namespace owf;

namespace {

// Dense check: realize(a) * realize(b) == coeff * realize(target).
bool product_matches_dense(const BasisUnitary& a, const BasisUnitary& b, const CycloField& f) {
  const auto s = unit_product(a, b, f);
  return realize(a, f) * realize(b, f) == realize(s.unit, f) * s.coeff;
}

}  // namespace

TEST_CASE("cocycle rule examples") {
  const auto& f3 = CycloField::of(3);
  {
    const auto r = unit_product_phase({1, 1, 3}, {2, 0, 3});
    CHECK(r.exponent % 3 == 0);
    CHECK(r.unit == BasisUnitary(0, 1, 3));
  }
  {
    const auto r = unit_product({1, 2, 3}, {2, 2, 3}, f3);
    CHECK(r.unit == BasisUnitary(0, 1, 3));
    CHECK(r.coeff == f3.omega_power(2));
  }
  for (long d : {2, 3, 5}) {
    const auto& f = CycloField::of(d);
    for (long p = 0; p < d; ++p) {
      for (long q = 0; q < d; ++q) {
        const auto r = unit_product({0, 0, d}, {p, q, d}, f);
        CHECK(r.unit == BasisUnitary(p, q, d));
        CHECK(r.coeff == f.one());
      }
    }
  }
}

TEST_CASE("cocycle rule agrees with dense matrices for every pair") {
  for (long d = 2; d <= 5; ++d) {
    const auto& f = CycloField::of(d);
    for (long p1 = 0; p1 < d; ++p1)
      for (long q1 = 0; q1 < d; ++q1)
        for (long p2 = 0; p2 < d; ++p2)
          for (long q2 = 0; q2 < d; ++q2) {
            INFO("d=" << d << " " << p1 << q1 << p2 << q2);
            CHECK(product_matches_dense({p1, q1, d}, {p2, q2, d}, f));
          }
  }
}

TEST_CASE("word products") {
  const auto& f2 = CycloField::of(2);
  const std::vector<BasisUnitary> w2{{1, 1, 2}, {1, 1, 2}};
  const auto r2 = word_product(w2, f2);
  CHECK(r2.unit == BasisUnitary(0, 0, 2));
  CHECK(r2.coeff == f2.from_rational(-1));

  const auto& f3 = CycloField::of(3);
  const std::vector<BasisUnitary> w3{{0, 2, 3}, {2, 0, 3}, {1, 1, 3}};
  const auto r3 = word_product(w3, f3);
  CHECK(r3.unit == BasisUnitary(0, 0, 3));
  CHECK(realize(w3[0], f3) * realize(w3[1], f3) * realize(w3[2], f3) == realize(r3.unit, f3) * r3.coeff);

  const std::vector<BasisUnitary> ids(3, BasisUnitary(0, 0, 3));
  CHECK(word_product(ids, f3).unit == BasisUnitary(0, 0, 3));
  CHECK(word_product(ids, f3).coeff == f3.one());

  std::mt19937_64 rng(3);
  for (long d = 2; d <= 7; ++d) {
    const auto& f = CycloField::of(d);
    std::uniform_int_distribution<long> idx(0, d - 1);
    for (int t = 0; t < 20; ++t) {
      std::vector<BasisUnitary> w;
      for (int k = 0; k < 4; ++k) w.emplace_back(idx(rng), idx(rng), d);
      const auto r = word_product(w, f);
      auto dense = realize(w[0], f);
      for (std::size_t k = 1; k < w.size(); ++k) dense = dense * realize(w[k], f);
      CHECK(dense == realize(r.unit, f) * r.coeff);
    }
  }
}

TEST_CASE("realizations") {
  const auto& f2 = CycloField::of(2);
  auto y = realize({0, 1, 2}, f2);
  CHECK(y.at(0, 0) == f2.one());
  CHECK(y.at(1, 1) == f2.from_rational(-1));
  CHECK(y.at(0, 1).is_zero());
  CHECK(y.at(1, 0).is_zero());

  const auto& f3 = CycloField::of(3);
  const auto v = realize({1, 0, 3}, f3);
  CHECK(v == shift_matrix(f3));
  for (long i = 0; i < 3; ++i) {
    for (long j = 0; j < 3; ++j) CHECK(v.at(i, j) == (j == (i + 1) % 3 ? f3.one() : f3.zero()));
  }
  CHECK(realize({1, 1, 3}, f3) == clock_matrix(f3) * shift_matrix(f3));
  CHECK(realize({0, 0, 3}, f3) == DenseMatrix::identity(f3));
}

TEST_CASE("the d^2 basis unitaries are linearly independent") {
  for (long d = 2; d <= 6; ++d) {
    const auto& f = CycloField::of(d);
    std::vector<DenseMatrix> all;
    for (long p = 0; p < d; ++p)
      for (long q = 0; q < d; ++q) all.push_back(realize({p, q, d}, f));
    INFO("d = " << d);
    CHECK(matrix_span_rank(all) == d * d);
    all.push_back(realize({1, 1, d}, f) * f.omega_power(1));
    CHECK(matrix_span_rank(all) == d * d);
  }
}

TEST_CASE("parametric products: examples") {
  const ParamUnitary uc0{{0, 1}, {0, 0}, false};
  const ParamUnitary u0q{{0, 0}, {0, 0}, true};
  const std::vector<ParamUnitary> word{uc0, u0q};
  const auto r = param_product(word, {Parity::Odd, Parity::Even});
  CHECK(r.target.p == LinearIndex{0, 1});
  CHECK(r.target.wiggle);
  CHECK(r.scalar == LaurentPoly::constant(1));
  const auto r_odd = param_product(word, {Parity::Odd, Parity::Odd});
  CHECK(r_odd.scalar == LaurentPoly::constant(-1));

  const ParamUnitary u10{{1, 0}, {0, 0}, false};
  const std::vector<ParamUnitary> bare{u10, u0q};
  CHECK_THROWS_AS(param_product(bare, {Parity::Odd, Parity::Even}), NotParityReducible);
  const std::vector<ParamUnitary> two_wiggles{u0q, u0q};
  CHECK_THROWS_AS(param_product(two_wiggles, {Parity::Odd, Parity::Even}), std::invalid_argument);
}

TEST_CASE("parametric products agree with concrete instances") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> small(-2, 2), bit(0, 1), slot(0, 2);
  int compared = 0;
  for (int t = 0; t < 600; ++t) {
    std::vector<ParamUnitary> word(3);
    const auto ws = static_cast<std::size_t>(slot(rng));
    for (std::size_t k = 0; k < 3; ++k) {
      word[k].p = {small(rng), bit(rng)};
      word[k].q = {small(rng), bit(rng)};
      word[k].wiggle = k == ws;
    }
    for (Parity cp : {Parity::Odd, Parity::Even}) {
      for (Parity qp : {Parity::Odd, Parity::Even}) {
        ParamProduct pr;
        try {
          pr = param_product(word, {cp, qp});
        } catch (const NotParityReducible&) {
          continue;
        }
        for (long c : cp == Parity::Odd ? std::vector<long>{3, 5} : std::vector<long>{2, 4}) {
          const auto& f = CycloField::of(2 * c);
          for (long wq = parity_value(qp); wq < 2 * c; wq += 2) {
            std::vector<BasisUnitary> conc;
            for (const auto& u : word) conc.push_back(u.instantiate(c, wq));
            const auto s = word_product(conc, f);
            INFO(word[0].to_string() << word[1].to_string() << word[2].to_string() << " c=" << c << " q=" << wq);
            CHECK(s.unit == pr.target.instantiate(c, wq));
            CHECK(s.coeff == pr.scalar.in_field(f));
            ++compared;
          }
        }
      }
    }
  }
  CHECK(compared > 1000);
}
