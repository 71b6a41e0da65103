#include "owf/certificates.hpp"
#include "support.hpp"

#include "catch_amalgamated.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace owf;

namespace {

LaurentPoly L(long c) { return LaurentPoly::constant(c); }
LaurentPoly L(std::vector<Rational> p, long low = 0) { return LaurentPoly(UniPoly(std::move(p)), low); }

bool check_ok(const Report& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return c.ok;
  FAIL("no check named " << prefix);
  return false;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("owf_test_" + name)).string();
}

}  // namespace

TEST_CASE("built-in certificates verify") {
  CHECK(verify(builtin_certificate(1)).passed());
  for (long d : {5, 7, 9, 15, 21}) {
    INFO("d=" << d);
    CHECK(verify(builtin_certificate(2, d)).passed());
  }
  CHECK(verify(builtin_certificate(3)).passed());
  CHECK(verify(builtin_certificate(4)).passed());
  CHECK(verify(builtin_certificate(5)).passed());
  CHECK(table2_dimensions() == std::vector<long>{5, 7, 9, 11, 13, 15, 21, 35});
  CHECK_THROWS(builtin_certificate(2, 8));
  CHECK_THROWS(builtin_certificate(6));
}

TEST_CASE("certificates survive a JSON round trip") {
  std::vector<Certificate> all{builtin_certificate(1), builtin_certificate(2, 9), builtin_certificate(3),
                               builtin_certificate(4), builtin_certificate(5)};
  for (const auto& c : all) {
    INFO(c.name);
    const auto text = to_json(c).dump();
    CHECK(certificate_from_json(nlohmann::json::parse(text)) == c);
    const auto a = temp_file("a.json"), b = temp_file("b.json");
    save_certificate(c, a);
    save_certificate(load_certificate(a), b);
    CHECK(slurp(a) == slurp(b));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }
  auto j = to_json(builtin_certificate(1));
  j["surprise"] = 1;
  CHECK_THROWS_AS(certificate_from_json(j), CertificateError);
  CHECK_THROWS_AS(load_certificate(temp_file("does_not_exist.json")), CertificateError);
}

TEST_CASE("form parsing") {
  const auto f = parse_form("-(1 + w^-1) - (1 - w^-1)*a132 + 2*w*a213");
  CHECK(f.constant == L({-1, -1}, -1));
  CHECK(f.linear[0] == L(0));
  CHECK(f.linear[1] == L({1, -1}, -1));
  CHECK(f.linear[2] == L({2}, 1));
  CHECK(f.linear[3] == L(0));

  const auto g = parse_form("-2 - 2*a132 + 2*a231");
  CHECK(g.constant == L(-2));
  CHECK(g.linear[1] == L(-2));
  CHECK(g.linear[3] == L(2));
  CHECK(parse_form("0").is_identically_zero());
  CHECK(parse_form("a123 - a123").is_identically_zero());
  CHECK(parse_form("(w^2 - 1)*(a123 + a213)").linear[0] == L({-1, 0, 1}));

  for (const char* bad : {"2*a124", "a123 +", "w^", "(1 + w", "1 * * a123", "a123*a132", "", "x"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_form(bad), CertificateError);
  }
}

TEST_CASE("table rows: derivation against the transcription") {
  // every printed row of the c odd table matches the derivation as written
  const auto t3 = builtin_certificate(3);
  std::size_t rows = 0;
  for (const auto& fam : t3.expected_forms)
    for (const auto& e : fam) {
      CHECK_FALSE(e.printed);
      ++rows;
    }
  CHECK(rows == 32);
  CHECK(check_ok(verify(t3), "table forms"));

  // the c even table carries recorded errata: the printed rows do not match
  const auto t4 = builtin_certificate(4);
  std::size_t errata = 0;
  for (const auto& fam : t4.expected_forms)
    for (const auto& e : fam) {
      if (!e.printed) continue;
      ++errata;
      CHECK_FALSE(compare_forms(parse_form(e.form), parse_form(*e.printed)).equal);
    }
  CHECK(errata == 2);
  CHECK(check_ok(verify(t4), "table forms"));
}

TEST_CASE("generic certificates at concrete dimensions") {
  const auto t3 = builtin_certificate(3);
  for (long d : {6, 10, 14}) {
    INFO("d=" << d);
    const auto inst = instantiate_generic(t3, d);
    CHECK(inst.kind == CertKind::Concrete);
    CHECK(verify(inst).passed());
  }
  const auto t4 = builtin_certificate(4);
  for (long d : {8, 12}) {
    INFO("d=" << d);
    CHECK(verify(instantiate_generic(t4, d)).passed());
  }
  // d = 4 is the exceptional case: the c even families alone leave points
  const auto at4 = verify(instantiate_generic(t4, 4));
  CHECK_FALSE(at4.passed());
  CHECK_FALSE(check_ok(at4, "final union empty"));
  CHECK_THROWS_AS(instantiate_generic(t3, 8), CertificateError);
  CHECK_THROWS_AS(instantiate_generic(t4, 6), CertificateError);
  CHECK_THROWS_AS(instantiate_generic(builtin_certificate(1), 6), CertificateError);
}

TEST_CASE("broken certificates are rejected") {
  auto moved = builtin_certificate(2, 5);
  moved.d = 7;
  CHECK_FALSE(verify(moved).passed());

  auto short_t3 = builtin_certificate(3);
  auto& fs = short_t3.side_condition_factors;
  const auto it = std::find_if(fs.begin(), fs.end(), [](const OmegaPoly& p) { return p == UniPoly{-1, 1}; });
  REQUIRE(it != fs.end());
  fs.erase(it);
  const auto r = verify(short_t3);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(check_ok(r, "degree accounting"));

  auto extra = builtin_certificate(3);
  extra.side_condition_factors.push_back(UniPoly{-2, 1});
  CHECK_FALSE(check_ok(verify(extra), "expected factors divide"));

  auto wrong_point = builtin_certificate(1);
  wrong_point.points[0][0] = Rational(1, 2);
  CHECK_FALSE(verify(wrong_point).passed());

  auto truncated = builtin_certificate(1);
  truncated.families.pop_back();
  CHECK_FALSE(verify(truncated).passed());
}

TEST_CASE("index perturbations never throw") {
  std::vector<Certificate> bases{builtin_certificate(1), builtin_certificate(2, 9), builtin_certificate(3)};
  int failed = 0, total = 0;
  for (const auto& base : bases) {
    for (std::size_t i = 0; i < base.families.size(); ++i) {
      for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t pq = 0; pq < 2; ++pq) {
          for (long delta : {-1, 1}) {
            auto c = base;
            c.expected_forms.clear();
            c.families[i].fixed[k][pq].a += delta;
            Report r;
            INFO(base.name << " family " << i << " slot " << k << "/" << pq << " by " << delta);
            CHECK_NOTHROW(r = verify(c));
            ++total;
            if (!r.passed()) ++failed;
          }
        }
      }
    }
  }
  // most perturbations break the certificate
  CHECK(failed > total / 2);
}

TEST_CASE("side-condition bookkeeping") {
  const UniPoly xm1{-1, 1}, xp1{1, 1};
  const auto acc = account_factors(xm1 * xm1 * xp1, {xm1, xp1});
  CHECK(acc.multiplicity == std::vector<int>{2, 1});
  CHECK(acc.complete());
  const auto part = account_factors(xm1 * xp1 * UniPoly{1, -6, 1}, {xm1});
  CHECK(part.multiplicity == std::vector<int>{1});
  CHECK_FALSE(part.complete());

  SideConditionSet s;
  s.add(UniPoly{1, 0, 1});  // Phi_4
  s.add(UniPoly{1, -1, 1});  // Phi_6
  s.add(UniPoly{1, -6, 1});
  CHECK(exceptional_dimensions(s, Parity::Even) == std::vector<long>{4});
  CHECK(exceptional_dimensions(s, Parity::Odd) == std::vector<long>{6});
  SideConditionSet none;
  none.add(UniPoly{1, -6, 1});
  CHECK(exceptional_dimensions(none, Parity::Odd).empty());
}

TEST_CASE("form comparison up to units") {
  const auto t = parse_form("-2 - 2*a132 + 2*a231");
  CHECK(compare_forms(t, t).equal);
  const auto twice_w = parse_form("-4*w - 4*w*a132 + 4*w*a231");
  const auto cmp = compare_forms(twice_w, t);
  CHECK_FALSE(cmp.equal);
  CHECK(cmp.unit_multiple);
  // table = r * w^k * derived
  CHECK(cmp.unit_scalar == Rational(1, 2));
  CHECK(cmp.unit_power == -1);
  const auto other = compare_forms(parse_form("1 + a132"), t);
  CHECK_FALSE(other.equal);
  CHECK_FALSE(other.unit_multiple);
}

TEST_CASE("coefficient classes") {
  using A = std::array<Rational, 6>;
  CHECK(classify_coefficients(A{1, 0, 0, -1, 0, 0}) == CoefficientClass::SumOfCommutators);
  CHECK(classify_coefficients(A{1, -1, -1, 1, 1, -1}) == CoefficientClass::FullCandidate);
  CHECK(classify_coefficients(A{0, 0, 0, 0, 0, 0}) == CoefficientClass::Zero);
  CHECK(classify_coefficients(A{3, 0, 0, -3, 0, 0}) == CoefficientClass::SumOfCommutators);
  CHECK(classify_coefficients(A{Rational(1, 2), Rational(-1, 2), Rational(-1, 2), Rational(1, 2), Rational(1, 2),
                                Rational(-1, 2)}) == CoefficientClass::FullCandidate);
}

TEST_CASE("symbolic identity checks") {
  CHECK(verify_jordan_s3().passed());
  CHECK(verify_appendix().passed());
}

TEST_CASE("search results become replayable certificates") {
  const auto e = enumerate_families(CycloField::of(3));
  std::vector<EnumeratedFamily> cands;
  for (auto i : e.distinct) cands.push_back(e.valid[i]);
  SearchConfig cfg;
  cfg.target = SearchTarget::Point;
  const auto res = greedy_search(cands, cfg);
  REQUIRE(res.reached_target);
  const auto cert = certificate_from_search(res, 3);
  CHECK(cert.outcome == Outcome::Points);
  CHECK(cert.points.size() == 1);
  CHECK(cert.families.size() == res.steps.size());
  CHECK(verify(cert).passed());
  CHECK(certificate_from_json(to_json(cert)) == cert);
}
