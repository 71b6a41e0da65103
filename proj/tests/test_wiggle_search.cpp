#include "owf/certificates.hpp"
#include "owf/wiggle_search.hpp"
#include "support.hpp"

#include "catch_amalgamated.hpp"

#include <algorithm>

using namespace owf;

namespace {

WiggleFamily fam(long d, int slot, BasisUnitary a, BasisUnitary b) { return {d, slot, {a, b}}; }

const Enumeration& enumeration3() {
  static const Enumeration e = enumerate_families(CycloField::of(3));
  return e;
}

std::vector<EnumeratedFamily> distinct3() {
  const auto& e = enumeration3();
  std::vector<EnumeratedFamily> out;
  for (auto i : e.distinct) out.push_back(e.valid[i]);
  return out;
}

std::vector<WiggleFamily> table1_families() {
  std::vector<WiggleFamily> out;
  for (const auto& f : builtin_certificate(1).families) out.push_back(f.instantiate(3));
  return out;
}

}  // namespace

TEST_CASE("enumeration at d = 3") {
  const auto& e = enumeration3();
  CHECK(e.candidates == 243);
  CHECK(e.valid.size() == 144);
  CHECK(e.distinct.size() == 48);
  const auto h1 = fam(3, 3, {1, 0, 3}, {2, 2, 3});
  CHECK(std::any_of(e.valid.begin(), e.valid.end(), [&](const EnumeratedFamily& x) { return x.family == h1; }));
  // the distinct representatives really are pairwise different
  for (std::size_t i = 0; i < e.distinct.size(); ++i)
    for (std::size_t j = i + 1; j < e.distinct.size(); ++j)
      CHECK_FALSE(e.valid[e.distinct[i]].omega == e.valid[e.distinct[j]].omega);
  // and every valid family shares its set with some representative
  for (const auto& v : e.valid) {
    CHECK(std::any_of(e.distinct.begin(), e.distinct.end(), [&](std::size_t i) { return e.valid[i].omega == v.omega; }));
  }
}

TEST_CASE("small dimensions enumerate 3 d^4 candidates") {
  const auto e2 = enumerate_families(CycloField::of(2));
  CHECK(e2.candidates == 48);
  CHECK(e2.valid.size() <= e2.candidates);
  CHECK_FALSE(e2.distinct.empty());
}

TEST_CASE("family evaluation layout") {
  const auto& f = CycloField::of(3);
  const auto h1 = fam(3, 3, {1, 0, 3}, {2, 2, 3});
  CHECK(h1.wiggle_row(0) == 0);
  CHECK(h1.wiggle_row(1) == 1);
  CHECK(fam(3, 1, {2, 0, 3}, {1, 1, 3}).wiggle_row(0) == 0);
  CHECK(fam(3, 1, {2, 0, 3}, {0, 1, 3}).wiggle_row(0) == 1);
  const auto ev = evaluate_family(f, h1);
  REQUIRE(ev.entries.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    const long row = static_cast<long>(i / 3);
    CHECK(ev.entries[i].target.p == row);
    CHECK(ev.entries[i].wiggle.p == h1.wiggle_row(row));
    CHECK(ev.entries[i].wiggle.q == static_cast<long>(i % 3));
  }
  CHECK(ev.valid());
  CHECK(h1.to_string() == "f(u^1_0, u^2_2, u^p_q)");
}

TEST_CASE("the worked family cuts out five hyperplanes") {
  const auto& f = CycloField::of(3);
  const auto om = omega_set(f, fam(3, 1, {2, 0, 3}, {1, 1, 3}));
  CHECK(om.goodness().pairs() == std::vector<std::pair<int, std::size_t>>{{3, 5}});
}

TEST_CASE("invalid families") {
  const auto& f = CycloField::of(3);
  const auto trivial = fam(3, 3, {0, 0, 3}, {0, 0, 3});
  CHECK_FALSE(evaluate_family(f, trivial).valid());
  CHECK_THROWS_AS(omega_set(f, trivial), InvalidFamily);
  CHECK_THROWS_AS(evaluate_family(f, fam(3, 0, {1, 0, 3}, {2, 2, 3})), InvalidFamily);
  CHECK_THROWS_AS(evaluate_family(f, fam(3, 4, {1, 0, 3}, {2, 2, 3})), InvalidFamily);
  CHECK_THROWS_AS(evaluate_family(f, fam(3, 3, {1, 0, 5}, {2, 2, 5})), InvalidFamily);
}

TEST_CASE("vanishing loci do not see scalar multiples") {
  std::mt19937_64 rng(61);
  const auto& f = CycloField::of(5);
  const auto ev = evaluate_family(f, fam(5, 3, {1, 0, 5}, {2, 3, 5}));
  for (const auto& e : ev.entries) {
    const auto k = test::random_nonzero(f, rng);
    AffineForm<CycloNum> scaled = e.coeff;
    scaled.constant *= k;
    for (auto& x : scaled.linear) x *= k;
    const auto a = subset_from_form(e.coeff);
    const auto b = subset_from_form(scaled);
    CHECK(a.kind == b.kind);
    CHECK(a.subset == b.subset);
  }
}

TEST_CASE("replay of the d = 3 certificate") {
  const auto fams = table1_families();
  std::vector<GoodnessSignature> trace;
  const auto u = replay(CycloField::of(3), fams, &trace);
  REQUIRE(trace.size() == fams.size());
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1]);
  CHECK(target_reached(u, SearchTarget::Point));
  CHECK_FALSE(target_reached(u, SearchTarget::Empty));
  const auto p = u.members().front().as_point();
  REQUIRE(p);
  const auto& f = CycloField::of(3);
  CHECK(*p == ParamPoint<CycloNum>{f.from_rational(Rational(1, 3)), f.from_rational(Rational(-1, 3)),
                                   f.from_rational(Rational(-1, 3)), f.from_rational(Rational(1, 3))});

  std::vector<GoodnessSignature> one;
  const auto single = replay(CycloField::of(3), {fams[0]}, &one);
  CHECK(one.size() == 1);
  CHECK(single == omega_set(CycloField::of(3), fams[0]));
  CHECK(target_reached(UnionOfAffine{}, SearchTarget::Empty));
}

TEST_CASE("greedy search reaches the point at d = 3") {
  SearchConfig cfg;
  cfg.target = SearchTarget::Point;
  const auto res = greedy_search(distinct3(), cfg);
  CHECK(res.reached_target);
  CHECK(res.steps.size() <= 20);
  CHECK(target_reached(res.final_union, SearchTarget::Point));
  // replaying the chosen families reproduces the final union
  CHECK(replay(CycloField::of(3), res.families()) == res.final_union);
  for (std::size_t i = 1; i < res.steps.size(); ++i) CHECK(res.steps[i].signature <= res.steps[i - 1].signature);
}

TEST_CASE("sampled search is deterministic per seed") {
  SearchConfig cfg;
  cfg.seed = 1;
  cfg.budget = 16;
  cfg.target = SearchTarget::Point;
  const auto cands = distinct3();
  const auto a = greedy_search(cands, cfg);
  const auto b = greedy_search(cands, cfg);
  CHECK(a.families() == b.families());
  CHECK(a.stop_reason == b.stop_reason);
  // the first pick only reads standalone signatures; the budget bounds later steps
  for (std::size_t i = 1; i < a.steps.size(); ++i) CHECK(a.steps[i].candidates_tested <= 16);
}

TEST_CASE("top-dimension scoring still terminates") {
  SearchConfig cfg;
  cfg.max_dim_only = true;
  cfg.target = SearchTarget::Point;
  const auto res = greedy_search(distinct3(), cfg);
  CHECK(res.reached_target);
  CHECK(replay(CycloField::of(3), res.families()) == res.final_union);
}
