#include "owf/certificates.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace owf {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

[[noreturn]] void bad(const std::string& what) { throw CertificateError(what); }

// --- JSON helpers ----------------------------------------------------------

json index_to_json(const LinearIndex& x) {
  if (x.b == 0) return x.a;
  return json{{"a", x.a}, {"b", x.b}};
}

LinearIndex index_from_json(const json& j) {
  if (j.is_number_integer()) return {j.get<long>(), 0};
  if (j.is_object()) {
    if (!j.contains("a") || !j.contains("b") || j.size() != 2) bad("index object needs exactly \"a\" and \"b\"");
    if (!j["a"].is_number_integer() || !j["b"].is_number_integer()) bad("index fields must be integers");
    return {j["a"].get<long>(), j["b"].get<long>()};
  }
  bad("index must be an integer or {\"a\": int, \"b\": int}");
}

json rational_to_json(const Rational& r) { return r.to_fraction_string(); }

Rational rational_from_json(const json& j) {
  if (!j.is_string()) bad("rationals must be strings like \"1/3\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    bad("bad rational \"" + j.get<std::string>() + "\": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Parity parse_parity(const json& j) {
  if (!j.is_string()) bad("parity must be \"even\" or \"odd\"");
  const auto s = j.get<std::string>();
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  bad("parity must be \"even\" or \"odd\", got \"" + s + "\"");
}

std::string class_name(Parity p) { return p == Parity::Odd ? "c-odd" : "c-even"; }

bool is_generic(CertKind k) { return k == CertKind::GenericCOdd || k == CertKind::GenericCEven; }

std::string point_to_string(const ParamPoint<CycloNum>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) s += ", ";
    s += p[i].to_string();
  }
  return s + ")";
}

std::string factor_list(const std::vector<OmegaPoly>& fs) {
  std::string s;
  for (const auto& f : fs) {
    if (!s.empty()) s += ", ";
    s += f.to_string("w");
  }
  return "{" + s + "}";
}

std::string dims_to_string(const std::vector<long>& v) {
  std::string s;
  for (long x : v) {
    if (!s.empty()) s += ", ";
    s += std::to_string(x);
  }
  return "{" + s + "}";
}

std::string label(std::size_t i) { return "H" + std::to_string(i + 1); }

bool indices_in_range(const FamilyDescriptor& f, long d) {
  for (const auto& u : f.fixed) {
    for (const auto& x : u) {
      if (x.b != 0 || x.a < 0 || x.a >= d) return false;
    }
  }
  return true;
}

// --- shared verification steps -------------------------------------------

// Derives the four parametric forms of every family and compares them with
// the stored table rows. Returns false if a derivation itself broke.
bool check_param_forms(const Certificate& cert, Parity cp, Report& rep,
                       std::vector<std::array<ParamEvaluation, 4>>* out) {
  bool all_ok = true;
  std::size_t compared = 0;
  std::size_t unit_multiples = 0;
  std::size_t errata = 0;
  for (std::size_t i = 0; i < cert.families.size(); ++i) {
    const auto& fam = cert.families[i];
    std::array<ParamEvaluation, 4> evs;
    try {
      for (long r = 0; r < 2; ++r) {
        for (int qp = 0; qp < 2; ++qp) {
          evs[static_cast<std::size_t>(2 * r + qp)] =
              evaluate_param_even(cp, fam.param_triple(r), qp ? Parity::Odd : Parity::Even);
        }
      }
    } catch (const std::exception& e) {
      rep.add(label(i) + " derivation", false, e.what());
      all_ok = false;
      continue;
    }
    if (out) out->push_back(evs);
    if (i >= cert.expected_forms.size() || cert.expected_forms[i].empty()) continue;

    const auto& rows = cert.expected_forms[i];
    std::set<std::pair<long, int>> covered;
    for (const auto& ef : rows) {
      const std::string where = label(i) + " row " + std::to_string(ef.row) + " q " + to_string(ef.q_parity);
      if (ef.row < 0 || ef.row > 1) {
        rep.add(where, false, "target row must be 0 or 1");
        all_ok = false;
        continue;
      }
      covered.insert({ef.row, parity_value(ef.q_parity)});
      const auto& ev = evs[static_cast<std::size_t>(2 * ef.row + parity_value(ef.q_parity))];
      ++compared;
      if (ef.target_q && ef.target_q->normalized() != ev.target.q.normalized()) {
        rep.add(where + " target", false,
                "derived u^" + ev.target.p.to_string() + "_{q+" + ev.target.q.to_string() + "}, table offset " +
                    ef.target_q->to_string());
        all_ok = false;
      }
      if (ef.printed && !compare_forms(ev.laurent, parse_form(*ef.printed)).equal) {
        ++errata;
        rep.notes.push_back(where + ": published row reads " + *ef.printed + ", derivation gives " +
                            to_string(ev.laurent) + "; corrected row recorded");
      }
      const auto table = parse_form(ef.form);
      const auto cmp = compare_forms(ev.laurent, table);
      if (cmp.equal) continue;
      if (cmp.unit_multiple) {
        ++unit_multiples;
        rep.notes.push_back(where + ": table form is " + cmp.unit_scalar.to_string() + "*w^" +
                            std::to_string(cmp.unit_power) + " times the derived form");
        continue;
      }
      rep.add(where + " form", false, "derived " + to_string(ev.laurent) + ", table " + ef.form);
      all_ok = false;
    }
    if (covered.size() != 4) {
      rep.add(label(i) + " table rows", false, "expected 4 rows (2 targets x 2 parities), got " +
                                                  std::to_string(covered.size()) + " distinct");
      all_ok = false;
    }
  }
  if (compared > 0) {
    rep.add("table forms", all_ok,
            std::to_string(compared) + " rows compared, " + std::to_string(unit_multiples) + " up to a unit, " +
                std::to_string(errata) + " recorded errata");
  }
  return all_ok;
}

struct ConcreteRun {
  bool ok = false;
  UnionOfAffine final_union;
};

ConcreteRun run_concrete(const CycloField& field, const std::vector<WiggleFamily>& fams, Report& rep) {
  ConcreteRun run;
  bool families_ok = true;
  std::vector<UnionOfAffine> omegas;
  for (std::size_t i = 0; i < fams.size(); ++i) {
    try {
      auto ev = evaluate_family(field, fams[i]);
      if (!ev.valid()) {
        for (const auto& e : ev.entries) {
          if (e.coeff.is_identically_zero()) {
            rep.add(label(i) + " valid", false,
                    fams[i].to_string() + ": coefficient of " + e.target.to_string() + " (wiggle " +
                        e.wiggle.to_string() + ") is identically zero at d=" + std::to_string(field.d()));
            break;
          }
        }
        families_ok = false;
        continue;
      }
      omegas.push_back(omega_set(ev));
    } catch (const std::exception& e) {
      rep.add(label(i) + " valid", false, e.what());
      families_ok = false;
    }
  }
  if (!families_ok) return run;
  rep.add("families valid", true, std::to_string(fams.size()) + " families at d=" + std::to_string(field.d()));

  UnionOfAffine phi;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    std::size_t skipped = 0;
    if (i == 0) phi = omegas[0];
    else if (i + 1 < omegas.size()) phi = intersect_unions_lookahead(phi, omegas[i], omegas[i + 1], skipped);
    else phi = intersect_unions(phi, omegas[i]);
    std::string step = label(i) + " " + fams[i].to_string() + " -> " + phi.goodness().to_string();
    if (skipped) step += " (+" + std::to_string(skipped) + " points off " + label(i + 1) + " not built)";
    rep.steps.push_back(step);
  }
  run.ok = true;
  run.final_union = std::move(phi);
  return run;
}

void record_union(Report& rep, const UnionOfAffine& u) {
  json members = json::array();
  for (const auto& m : u.members()) members.push_back(m.to_string());
  rep.data["final_union"] = members;
  rep.data["final_signature"] = u.goodness().to_string();
}

void check_concrete_outcome(const Certificate& cert, const CycloField& field, const UnionOfAffine& u, Report& rep) {
  record_union(rep, u);
  if (cert.outcome == Outcome::Empty) {
    rep.result = u.empty() ? "empty" : "non-empty " + u.goodness().to_string();
    rep.add("final union empty", u.empty(), u.empty() ? "" : "got " + u.goodness().to_string());
    return;
  }
  std::set<ParamPoint<CycloNum>> expected;
  for (const auto& p : cert.points) {
    ParamPoint<CycloNum> q;
    for (std::size_t i = 0; i < 4; ++i) q[i] = field.from_rational(p[i]);
    expected.insert(q);
  }
  std::set<ParamPoint<CycloNum>> got;
  bool all_points = true;
  for (const auto& m : u.members()) {
    auto p = m.as_point();
    if (!p) {
      all_points = false;
      continue;
    }
    got.insert(*p);
  }
  std::string listed;
  for (const auto& p : got) listed += (listed.empty() ? "" : " ") + point_to_string(p);
  rep.result = all_points ? (got.empty() ? "empty" : "points " + listed) : "non-point union " + u.goodness().to_string();
  rep.add("final union is a point set", all_points, all_points ? "" : "got " + u.goodness().to_string());
  if (all_points) {
    rep.add("points match", got == expected,
            got == expected ? listed : "got " + (listed.empty() ? std::string("nothing") : listed));
  }
}

}  // namespace

// --- kinds, descriptors ------------------------------------------------------

std::string to_string(CertKind k) {
  switch (k) {
    case CertKind::ConcreteOdd: return "concrete-odd";
    case CertKind::Concrete: return "concrete";
    case CertKind::GenericCOdd: return "generic-c-odd";
    case CertKind::GenericCEven: return "generic-c-even";
    case CertKind::D4Special: return "d4-special";
  }
  return "?";
}

CertKind parse_cert_kind(std::string_view s) {
  for (auto k : {CertKind::ConcreteOdd, CertKind::Concrete, CertKind::GenericCOdd, CertKind::GenericCEven,
                 CertKind::D4Special}) {
    if (to_string(k) == s) return k;
  }
  bad("unknown certificate kind \"" + std::string(s) + "\"");
}

bool FamilyDescriptor::is_concrete() const {
  for (const auto& u : fixed) {
    for (const auto& x : u) {
      if (x.b != 0) return false;
    }
  }
  return true;
}

WiggleFamily FamilyDescriptor::instantiate(long d) const {
  if (slot < 1 || slot > 3) bad("wiggle slot must be 1, 2 or 3");
  if (!is_concrete() && d % 2 != 0) bad("parametric indices need even d");
  const long c = d / 2;
  return WiggleFamily{d, slot,
                      {BasisUnitary(fixed[0][0].at(c), fixed[0][1].at(c), d),
                       BasisUnitary(fixed[1][0].at(c), fixed[1][1].at(c), d)}};
}

std::array<ParamUnitary, 3> FamilyDescriptor::param_triple(long target_row) const {
  if (slot < 1 || slot > 3) bad("wiggle slot must be 1, 2 or 3");
  const ParamUnitary a{fixed[0][0], fixed[0][1], false};
  const ParamUnitary b{fixed[1][0], fixed[1][1], false};
  const ParamUnitary w{(LinearIndex{target_row, 0} - fixed[0][0] - fixed[1][0]).normalized(), {0, 0}, true};
  switch (slot) {
    case 1: return {w, a, b};
    case 2: return {a, w, b};
    default: return {a, b, w};
  }
}

std::string FamilyDescriptor::to_string() const {
  std::array<std::string, 3> s;
  std::size_t k = 0;
  for (int i = 0; i < 3; ++i) {
    if (i + 1 == slot) {
      s[static_cast<std::size_t>(i)] = "u^p_q";
    } else {
      const auto& u = fixed[k++];
      s[static_cast<std::size_t>(i)] = "u^{" + u[0].to_string() + "}_{" + u[1].to_string() + "}";
    }
  }
  return "f(" + s[0] + ", " + s[1] + ", " + s[2] + ")";
}

// --- JSON --------------------------------------------------------------------

json to_json(const Certificate& c) {
  json j;
  if (!c.name.empty()) j["name"] = c.name;
  j["kind"] = to_string(c.kind);
  if (c.d) j["d"] = *c.d;
  if (c.c_parity) j["class"] = class_name(*c.c_parity);
  json fams = json::array();
  for (const auto& f : c.families) {
    fams.push_back({{"slot", f.slot},
                    {"fixed",
                     {{index_to_json(f.fixed[0][0]), index_to_json(f.fixed[0][1])},
                      {index_to_json(f.fixed[1][0]), index_to_json(f.fixed[1][1])}}}});
  }
  j["families"] = fams;
  json expected{{"outcome", c.outcome == Outcome::Empty ? "empty" : "points"}};
  if (c.outcome == Outcome::Points) {
    json pts = json::array();
    for (const auto& p : c.points) {
      json row = json::array();
      for (const auto& x : p) row.push_back(rational_to_json(x));
      pts.push_back(row);
    }
    expected["points"] = pts;
  }
  j["expected"] = expected;
  if (!c.side_condition_factors.empty()) {
    json fs = json::array();
    for (const auto& f : c.side_condition_factors) {
      json coeffs = json::array();
      for (const auto& x : f.coefficients()) coeffs.push_back(rational_to_json(x));
      fs.push_back(coeffs);
    }
    j["side_condition_factors"] = fs;
  }
  if (c.exceptional_d) j["exceptional_d"] = *c.exceptional_d;
  if (!c.expected_forms.empty()) {
    json all = json::array();
    for (const auto& rows : c.expected_forms) {
      json jr = json::array();
      for (const auto& ef : rows) {
        json e{{"row", ef.row}, {"q_parity", to_string(ef.q_parity)}, {"form", ef.form}};
        if (ef.printed) e["printed"] = *ef.printed;
        if (ef.target_q) e["target_q"] = {{"a", ef.target_q->a}, {"b", ef.target_q->b}};
        jr.push_back(e);
      }
      all.push_back(jr);
    }
    j["expected_forms"] = all;
  }
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j;
}

Certificate certificate_from_json(const json& j) {
  try {
    if (!j.is_object()) bad("certificate must be a JSON object");
    static const std::set<std::string> known{"name",  "kind",     "d",     "class",          "families",
                                             "expected", "side_condition_factors", "exceptional_d",
                                             "expected_forms", "notes"};
    for (const auto& [k, v] : j.items()) {
      if (!known.count(k)) bad("unknown key \"" + k + "\"");
    }
    Certificate c;
    if (j.contains("name")) c.name = j.at("name").get<std::string>();
    const auto& kind = field(j, "kind");
    if (!kind.is_string()) bad("\"kind\" must be a string");
    c.kind = parse_cert_kind(kind.get<std::string>());

    if (is_generic(c.kind)) {
      c.c_parity = field(j, "class").get<std::string>() == "c-odd"    ? Parity::Odd
                   : field(j, "class").get<std::string>() == "c-even" ? Parity::Even
                                                                       : (bad("\"class\" must be c-odd or c-even"), Parity::Odd);
      if ((c.kind == CertKind::GenericCOdd) != (*c.c_parity == Parity::Odd)) bad("\"class\" contradicts \"kind\"");
      if (j.contains("d")) bad("generic certificates take \"class\", not \"d\"");
    } else {
      const auto& d = field(j, "d");
      if (!d.is_number_integer()) bad("\"d\" must be an integer");
      c.d = d.get<long>();
      if (*c.d < 2 || *c.d > 1000) bad("\"d\" out of range");
      if (j.contains("class")) bad("concrete certificates take \"d\", not \"class\"");
    }

    const auto& fams = field(j, "families");
    if (!fams.is_array() || fams.empty()) bad("\"families\" must be a nonempty array");
    for (const auto& f : fams) {
      if (!f.is_object()) bad("family must be an object");
      FamilyDescriptor fd;
      const auto& slot = field(f, "slot");
      if (!slot.is_number_integer()) bad("\"slot\" must be an integer");
      fd.slot = slot.get<int>();
      if (fd.slot < 1 || fd.slot > 3) bad("\"slot\" must be 1, 2 or 3");
      const auto& fixed = field(f, "fixed");
      if (!fixed.is_array() || fixed.size() != 2) bad("\"fixed\" must hold two [p, q] pairs");
      for (std::size_t k = 0; k < 2; ++k) {
        if (!fixed[k].is_array() || fixed[k].size() != 2) bad("fixed unit must be [p, q]");
        fd.fixed[k] = {index_from_json(fixed[k][0]), index_from_json(fixed[k][1])};
      }
      if (!is_generic(c.kind) && c.kind != CertKind::D4Special && !fd.is_concrete()) {
        bad("concrete certificates need integer indices");
      }
      c.families.push_back(fd);
    }

    const auto& exp = field(j, "expected");
    const auto outcome = field(exp, "outcome").get<std::string>();
    if (outcome == "empty") {
      c.outcome = Outcome::Empty;
      if (exp.contains("points")) bad("\"points\" given with outcome empty");
    } else if (outcome == "points") {
      c.outcome = Outcome::Points;
      const auto& pts = field(exp, "points");
      if (!pts.is_array()) bad("\"points\" must be an array");
      for (const auto& p : pts) {
        if (!p.is_array() || p.size() != 4) bad("each point needs 4 coordinates");
        std::array<Rational, 4> q;
        for (std::size_t i = 0; i < 4; ++i) q[i] = rational_from_json(p[i]);
        c.points.push_back(q);
      }
    } else {
      bad("outcome must be \"empty\" or \"points\"");
    }

    if (j.contains("side_condition_factors")) {
      if (!is_generic(c.kind)) bad("side_condition_factors only apply to generic kinds");
      for (const auto& f : j.at("side_condition_factors")) {
        if (!f.is_array()) bad("factor must be a coefficient list, lowest degree first");
        std::vector<Rational> cs;
        for (const auto& x : f) cs.push_back(rational_from_json(x));
        UniPoly p(cs);
        if (p.degree() < 1) bad("side-condition factors must be nonconstant");
        c.side_condition_factors.push_back(p);
      }
    }
    if (j.contains("exceptional_d")) {
      std::vector<long> ds;
      for (const auto& x : j.at("exceptional_d")) {
        if (!x.is_number_integer()) bad("exceptional_d entries must be integers");
        ds.push_back(x.get<long>());
      }
      c.exceptional_d = ds;
    }
    if (j.contains("expected_forms")) {
      const auto& all = j.at("expected_forms");
      if (!all.is_array() || all.size() != c.families.size()) bad("expected_forms must parallel families");
      for (const auto& rows : all) {
        if (!rows.is_array()) bad("expected_forms entry must be an array");
        std::vector<ExpectedForm> out;
        for (const auto& e : rows) {
          ExpectedForm ef;
          ef.row = field(e, "row").get<long>();
          ef.q_parity = parse_parity(field(e, "q_parity"));
          ef.form = field(e, "form").get<std::string>();
          parse_form(ef.form);  // syntax check now, not mid-verification
          if (e.contains("printed")) {
            ef.printed = e.at("printed").get<std::string>();
            parse_form(*ef.printed);
          }
          if (e.contains("target_q")) {
            const auto& t = e.at("target_q");
            ef.target_q = LinearIndex{field(t, "a").get<long>(), field(t, "b").get<long>()};
          }
          out.push_back(ef);
        }
        c.expected_forms.push_back(out);
      }
    }
    if (j.contains("notes")) c.notes = j.at("notes").get<std::vector<std::string>>();
    return c;
  } catch (const json::exception& e) {
    bad(std::string("malformed certificate: ") + e.what());
  }
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
  return certificate_from_json(j);
}

void save_certificate(const Certificate& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path);
  out << to_json(c).dump(2) << "\n";
}

// --- Report --------------------------------------------------------------------

void Report::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

bool Report::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.ok) out.push_back(c.name + (c.detail.empty() ? "" : ": " + c.detail));
  }
  return out;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << subject << "\n";
  for (const auto& s : steps) os << "  step " << s << "\n";
  for (const auto& c : checks) {
    os << "  " << (c.ok ? "ok   " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  for (const auto& n : notes) os << "  note: " << n << "\n";
  if (!result.empty()) os << "result: " << result << "\n";
  os << (passed() ? "PASS" : "FAIL");
  char buf[32];
  std::snprintf(buf, sizeof buf, " (%.2f s)", seconds);
  os << buf << "\n";
  return os.str();
}

json Report::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) cs.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"subject", subject}, {"passed", passed()}, {"result", result},   {"checks", cs},
          {"steps", steps},     {"notes", notes},     {"data", data},       {"seconds", seconds}};
}

// --- form comparison, factors ---------------------------------------------------

FormComparison compare_forms(const AffineForm<LaurentPoly>& derived, const AffineForm<LaurentPoly>& table) {
  FormComparison out;
  if (derived == table) {
    out.equal = true;
    return out;
  }
  auto comp = [](const AffineForm<LaurentPoly>& f, std::size_t i) -> const LaurentPoly& {
    return i == 0 ? f.constant : f.linear[i - 1];
  };
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < 5; ++i) {
    if (!comp(derived, i).is_zero()) {
      first = i;
      break;
    }
  }
  if (!first || comp(table, *first).is_zero()) return out;
  const auto& d0 = comp(derived, *first);
  const auto& t0 = comp(table, *first);
  const Rational r = t0.poly().leading() / d0.poly().leading();
  const long k = t0.low() - d0.low();
  const auto unit = LaurentPoly::monomial(r, k);
  for (std::size_t i = 0; i < 5; ++i) {
    if (comp(derived, i) * unit != comp(table, i)) return out;
  }
  out.unit_multiple = true;
  out.unit_scalar = r;
  out.unit_power = k;
  return out;
}

FactorAccounting account_factors(const OmegaPoly& product, const std::vector<OmegaPoly>& factors) {
  FactorAccounting acc;
  acc.leftover = product;
  for (const auto& f : factors) {
    int m = 0;
    if (f.degree() >= 1) {
      while (!acc.leftover.is_zero() && divides(f, acc.leftover)) {
        acc.leftover = divmod(acc.leftover, f).quotient;
        ++m;
      }
    }
    acc.multiplicity.push_back(m);
  }
  return acc;
}

std::vector<long> exceptional_dimensions(const SideConditionSet& side, Parity c_parity) {
  std::set<long> out;
  for (const auto& p : side.polys()) {
    for (long m : cyclotomic_divisors(p)) {
      const bool in_class = c_parity == Parity::Odd ? (m >= 6 && m % 4 == 2) : (m >= 4 && m % 4 == 0);
      if (in_class) out.insert(m);
    }
  }
  return {out.begin(), out.end()};
}

Certificate instantiate_generic(const Certificate& cert, long d) {
  if (!is_generic(cert.kind) || !cert.c_parity) bad("instantiate_generic needs a generic certificate");
  const long c = d / 2;
  if (d % 2 != 0 || (c % 2 == 1) != (*cert.c_parity == Parity::Odd)) {
    bad("d=" + std::to_string(d) + " is not in the certificate's class");
  }
  Certificate out;
  out.name = cert.name + " at d=" + std::to_string(d);
  out.kind = CertKind::Concrete;
  out.d = d;
  for (const auto& f : cert.families) {
    const auto w = f.instantiate(d);
    FamilyDescriptor g;
    g.slot = f.slot;
    for (std::size_t k = 0; k < 2; ++k) g.fixed[k] = {LinearIndex{w.fixed[k].p, 0}, LinearIndex{w.fixed[k].q, 0}};
    out.families.push_back(g);
  }
  out.outcome = cert.outcome;
  out.points = cert.points;
  return out;
}

Certificate certificate_from_search(const SearchResult& res, long d) {
  Certificate out;
  out.name = "search, d=" + std::to_string(d);
  out.kind = d % 2 ? CertKind::ConcreteOdd : CertKind::Concrete;
  out.d = d;
  for (const auto& f : res.families()) {
    FamilyDescriptor g;
    g.slot = f.slot;
    for (std::size_t k = 0; k < 2; ++k) g.fixed[k] = {LinearIndex{f.fixed[k].p, 0}, LinearIndex{f.fixed[k].q, 0}};
    out.families.push_back(g);
  }
  const auto& u = res.final_union;
  if (u.empty()) {
    out.outcome = Outcome::Empty;
  } else {
    std::vector<std::array<Rational, 4>> pts;
    bool rational_points = true;
    for (const auto& m : u.members()) {
      const auto p = m.as_point();
      if (!p) {
        rational_points = false;
        break;
      }
      std::array<Rational, 4> q;
      for (std::size_t i = 0; i < 4; ++i) {
        if (!(*p)[i].is_rational()) {
          rational_points = false;
          break;
        }
        q[i] = (*p)[i].is_zero() ? Rational(0) : (*p)[i].residue().leading();
      }
      if (!rational_points) break;
      pts.push_back(q);
    }
    if (rational_points) {
      out.outcome = Outcome::Points;
      out.points = pts;
    } else {
      out.outcome = Outcome::Empty;
      out.notes.push_back("partial: search stopped (" + res.stop_reason + ") at " + u.goodness().to_string());
    }
  }
  if (!res.reached_target && out.notes.empty()) out.notes.push_back("partial: " + res.stop_reason);
  return out;
}

// --- verifiers -------------------------------------------------------------------

Report verify(const Certificate& cert) {
  switch (cert.kind) {
    case CertKind::ConcreteOdd:
    case CertKind::Concrete: return verify_concrete(cert);
    case CertKind::GenericCOdd:
    case CertKind::GenericCEven: return verify_generic_even(cert);
    case CertKind::D4Special: return verify_d4(cert);
  }
  bad("unknown certificate kind");
}

Report verify_concrete(const Certificate& cert) {
  const auto t0 = Clock::now();
  Report rep;
  rep.subject = (cert.name.empty() ? std::string("certificate") : cert.name) + " [" + to_string(cert.kind) +
                (cert.d ? ", d=" + std::to_string(*cert.d) : "") + "]";
  rep.notes = cert.notes;
  const bool kind_ok = cert.kind == CertKind::Concrete || cert.kind == CertKind::ConcreteOdd;
  const long d = cert.d.value_or(0);
  if (!kind_ok || d < 3) {
    rep.add("preconditions", false, !kind_ok ? "not a concrete certificate" : "need d >= 3");
    rep.seconds = seconds_since(t0);
    return rep;
  }
  if (cert.kind == CertKind::ConcreteOdd && d % 2 == 0) {
    rep.add("preconditions", false, "concrete-odd certificate with even d=" + std::to_string(d));
  }
  std::vector<WiggleFamily> fams;
  bool in_range = true;
  for (std::size_t i = 0; i < cert.families.size(); ++i) {
    const auto& f = cert.families[i];
    if (!indices_in_range(f, d) || f.slot < 1 || f.slot > 3) {
      rep.add(label(i) + " indices", false, f.to_string() + " has indices outside 0.." + std::to_string(d - 1));
      in_range = false;
      continue;
    }
    fams.push_back(f.instantiate(d));
  }
  if (in_range && !cert.families.empty()) {
    const auto& field = CycloField::of(d);
    auto run = run_concrete(field, fams, rep);
    if (run.ok) check_concrete_outcome(cert, field, run.final_union, rep);
  } else if (cert.families.empty()) {
    rep.add("families", false, "no families");
  }
  rep.data["families"] = cert.families.size();
  rep.seconds = seconds_since(t0);
  return rep;
}

Report verify_generic_even(const Certificate& cert) {
  const auto t0 = Clock::now();
  Report rep;
  rep.subject = (cert.name.empty() ? std::string("certificate") : cert.name) + " [" + to_string(cert.kind) + "]";
  rep.notes = cert.notes;
  if (!is_generic(cert.kind) || !cert.c_parity || cert.families.empty()) {
    rep.add("preconditions", false, "need a generic certificate with a declared class and families");
    rep.seconds = seconds_since(t0);
    return rep;
  }
  const Parity cp = *cert.c_parity;

  std::vector<std::array<ParamEvaluation, 4>> evs;
  if (!check_param_forms(cert, cp, rep, &evs) && evs.size() != cert.families.size()) {
    rep.seconds = seconds_since(t0);
    return rep;
  }

  // Generic intersection; side conditions collected from both the forms and
  // every elimination.
  SideConditionSet side;
  std::vector<GenericUnion> omegas;
  bool valid = true;
  for (std::size_t i = 0; i < evs.size(); ++i) {
    std::vector<GenericAffineSubset> members;
    for (const auto& ev : evs[i]) {
      auto s = subset_from_form(ev.coeff, side);
      if (s.kind == FormKind::AlwaysZero) {
        rep.add(label(i) + " valid", false, "a coefficient form is identically zero");
        valid = false;
      } else if (s.kind == FormKind::Subset) {
        members.push_back(std::move(*s.subset));
      }
    }
    omegas.emplace_back(std::move(members), false);
  }
  if (!valid) {
    rep.seconds = seconds_since(t0);
    return rep;
  }
  GenericUnion phi;
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    phi = i == 0 ? omegas[0] : intersect_unions(phi, omegas[i], side);
    rep.steps.push_back(label(i) + " " + cert.families[i].to_string() + " -> " + phi.goodness().to_string());
  }
  {
    json members = json::array();
    for (const auto& m : phi.members()) members.push_back(m.to_string());
    rep.data["final_union"] = members;
  }
  const bool empty = phi.empty();
  if (cert.outcome == Outcome::Empty) {
    rep.add("final union empty", empty, empty ? "" : "got " + phi.goodness().to_string());
  } else {
    rep.add("expected outcome", false, "generic certificates can only certify an empty intersection");
  }

  std::vector<OmegaPoly> derived(side.polys().begin(), side.polys().end());
  json derived_json = json::array();
  for (const auto& p : derived) derived_json.push_back(p.to_string("w"));
  rep.data["side_conditions"] = derived_json;

  std::vector<OmegaPoly> expected;
  for (const auto& f : cert.side_condition_factors) expected.push_back(f.primitive_part());
  const OmegaPoly product = side.product();
  bool each_divides = true;
  std::string missing;
  for (const auto& f : expected) {
    if (!divides(f, product)) {
      each_divides = false;
      missing += (missing.empty() ? "" : ", ") + f.to_string("w");
    }
  }
  rep.add("expected factors divide the side-condition product", each_divides,
          each_divides ? factor_list(expected) : "not dividing: " + missing);
  const auto acc = account_factors(product, expected);
  std::string mult;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    mult += (mult.empty() ? "" : ", ") + expected[i].to_string("w") + "^" + std::to_string(acc.multiplicity[i]);
  }
  rep.add("degree accounting", acc.complete(),
          "product degree " + std::to_string(product.degree()) +
              (acc.complete() ? ", fully accounted" : ", unaccounted part " + acc.leftover.to_string("w")));
  rep.data["factor_multiplicities"] = mult;

  const auto exceptional = exceptional_dimensions(side, cp);
  const auto want = cert.exceptional_d.value_or(std::vector<long>{});
  rep.add("exceptional dimensions", exceptional == want,
          "computed " + dims_to_string(exceptional) + ", expected " + dims_to_string(want));
  rep.data["exceptional_d"] = exceptional;
  const std::string cls = cp == Parity::Odd ? "d = 2 mod 4, d >= 6" : "d = 0 mod 4, d >= 4";
  rep.result = (empty ? "empty" : "non-empty") + std::string(" for every ") + cls +
               (exceptional.empty() ? "" : " except d in " + dims_to_string(exceptional)) + "; side conditions " +
               factor_list(derived);
  rep.seconds = seconds_since(t0);
  return rep;
}

Report verify_d4(const Certificate& cert) {
  const auto t0 = Clock::now();
  Report rep;
  rep.subject = (cert.name.empty() ? std::string("certificate") : cert.name) + " [d4-special]";
  rep.notes = cert.notes;
  if (cert.kind != CertKind::D4Special || cert.d.value_or(0) != 4 || cert.families.empty()) {
    rep.add("preconditions", false, "need a d4-special certificate with d = 4");
    rep.seconds = seconds_since(t0);
    return rep;
  }
  // c = 2 is even; the stored table rows are checked against the c-even derivation.
  check_param_forms(cert, Parity::Even, rep, nullptr);
  std::vector<WiggleFamily> fams;
  for (const auto& f : cert.families) fams.push_back(f.instantiate(4));
  const auto& field = CycloField::of(4);
  auto run = run_concrete(field, fams, rep);
  if (run.ok) check_concrete_outcome(cert, field, run.final_union, rep);
  rep.seconds = seconds_since(t0);
  return rep;
}

}  // namespace owf
