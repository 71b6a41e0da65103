// owf: replay, verify and search one-wiggle certificates.
// Exit codes: 0 pass, 1 usage or input error, 2 verification failure, 3 search stall.
#include "owf/certificates.hpp"
#include "owf/oracle.hpp"
#include "owf/wiggle_search.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;
using namespace owf;

constexpr int kPass = 0;
constexpr int kUsage = 1;
constexpr int kFail = 2;
constexpr int kStall = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << j.dump(2) << "\n";
}

json report_document(const std::string& command, const json& inputs, const Report& rep) {
  return {{"command", command},
          {"inputs", inputs},
          {"result", {{"passed", rep.passed()},
                      {"summary", rep.result},
                      {"checks", rep.to_json()["checks"]},
                      {"notes", rep.notes},
                      {"data", rep.data}}},
          {"steps", rep.steps},
          {"timing", {{"seconds", rep.seconds}}}};
}

int finish(const Report& rep) {
  std::cout << rep.to_text();
  if (!rep.passed()) {
    for (const auto& f : rep.failures()) std::cout << "reason: " << f << "\n";
  }
  return rep.passed() ? kPass : kFail;
}

// --- verify ---

struct VerifyOpts {
  std::optional<int> table;
  std::optional<long> d;
  std::string cert;
  std::string json_out;
};

int run_verify(const VerifyOpts& o) {
  if (o.table.has_value() == !o.cert.empty()) throw UsageError("verify needs exactly one of --table or --cert");
  Certificate cert;
  json inputs;
  if (o.table) {
    cert = builtin_certificate(*o.table, o.d);
    inputs["table"] = *o.table;
    if (o.d) inputs["d"] = *o.d;
  } else {
    if (o.d) throw UsageError("--d only applies to --table");
    cert = load_certificate(o.cert);
    inputs["cert"] = o.cert;
  }
  const Report rep = verify(cert);
  if (!o.json_out.empty()) write_json(o.json_out, report_document("verify", inputs, rep));
  return finish(rep);
}

// --- search ---

struct SearchOpts {
  long d = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> budget;
  bool max_dim_only = false;
  std::string target = "empty";
  std::string out;
};

int run_search(const SearchOpts& o) {
  if (o.d < 3) throw UsageError("search needs --d >= 3");
  if (o.budget && *o.budget == 0) throw UsageError("--budget must be positive");
  SearchConfig cfg;
  cfg.seed = o.seed;
  cfg.budget = o.budget;
  cfg.max_dim_only = o.max_dim_only;
  cfg.target = o.target == "point" ? SearchTarget::Point : SearchTarget::Empty;

  const auto t0 = std::chrono::steady_clock::now();
  const auto& field = CycloField::of(o.d);
  const auto en = enumerate_families(field);
  std::vector<EnumeratedFamily> candidates;
  for (auto i : en.distinct) candidates.push_back(en.valid[i]);
  std::cout << "d=" << o.d << ": " << en.valid.size() << " valid families, " << candidates.size()
            << " distinct Omega-sets\n";

  const auto res = greedy_search(candidates, cfg);
  for (std::size_t i = 0; i < res.steps.size(); ++i) {
    const auto& s = res.steps[i];
    std::cout << "  step H" << (i + 1) << " " << s.family.to_string() << " -> " << s.signature.to_string()
              << " (" << s.candidates_tested << " tested)\n";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "stop: " << res.stop_reason << ", " << res.steps.size() << " families, final "
            << res.final_union.goodness().to_string() << "\n";
  std::printf("time: %.2f s\n", secs);

  if (!o.out.empty()) {
    const auto cert = certificate_from_search(res, o.d);
    save_certificate(cert, o.out);
    std::cout << "certificate: " << o.out << "\n";
  }
  return res.reached_target ? kPass : kStall;
}

// --- enumerate ---

int run_enumerate(long d, bool stats) {
  if (d < 3) throw UsageError("enumerate needs --d >= 3");
  const auto en = enumerate_families(CycloField::of(d));
  std::cout << "d=" << d << "\n";
  std::cout << "candidates: " << en.candidates << "\n";
  std::cout << "families: " << en.valid.size() << "\n";
  std::cout << "distinct Omega-sets: " << en.distinct.size() << "\n";
  if (stats) {
    std::array<std::size_t, 5> top{};
    for (auto i : en.distinct) {
      const int m = en.valid[i].omega.goodness().max_dimension();
      if (m >= 0) ++top[static_cast<std::size_t>(m)];
    }
    for (int k = 4; k >= 0; --k) {
      if (top[static_cast<std::size_t>(k)]) {
        std::cout << "  distinct Omega-sets of top dimension " << k << ": " << top[static_cast<std::size_t>(k)] << "\n";
      }
    }
  }
  if (d == 3 && (en.valid.size() != 144 || en.distinct.size() != 48)) {
    std::cout << "warning: convention mismatch, reference counts at d=3 are 144 and 48\n";
  }
  return kPass;
}

// --- oracle ---

int run_oracle_cmd(long d, std::size_t trials, std::uint64_t seed) {
  if (d < 2 || d > 12) throw UsageError("oracle needs 2 <= --d <= 12");
  const auto res = run_oracle(d, trials, std::max<std::size_t>(1, trials / 5), seed);
  std::cout << "d=" << d << ": " << res.product_checks << " product checks, " << res.evaluation_checks
            << " evaluation checks\n";
  if (!res.ok) {
    std::cout << "FAIL\ncounterexample: " << res.counterexample << "\n";
    return kFail;
  }
  std::cout << "PASS\n";
  return kPass;
}

// --- sidecheck ---

int run_sidecheck(int table, std::optional<long> d, bool diagnostics) {
  if (table != 3 && table != 4) throw UsageError("sidecheck takes --table 3 or 4");
  if (d) {
    const bool in_class = table == 3 ? (*d >= 6 && *d % 4 == 2) : (*d >= 4 && *d % 4 == 0);
    if (!in_class) {
      throw UsageError("table " + std::to_string(table) + " covers " +
                       (table == 3 ? "d = 2 mod 4, d >= 6" : "d = 0 mod 4, d >= 4"));
    }
  }
  const auto cert = builtin_certificate(table);
  bool vanishes = false;
  for (const auto& f : cert.side_condition_factors) {
    const auto divs = cyclotomic_divisors(f);
    std::string ds;
    for (long m : divs) ds += (ds.empty() ? "" : ", ") + std::to_string(m);
    std::cout << f.to_string("w") << ": vanishes at primitive m-th roots for m in {" << ds << "}";
    if (d) {
      const bool hit = divs.count(*d) > 0;
      vanishes = vanishes || hit;
      std::cout << (hit ? ", VANISHES at d=" : ", nonzero at d=") << *d;
      if (diagnostics) {
        const auto w = std::polar(1.0, 2 * M_PI / static_cast<double>(*d));
        std::printf(" (|p(w)| ~ %.6g)", std::abs(f.evaluate(w)));
      }
    }
    std::cout << "\n";
  }
  return vanishes ? kFail : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-wiggle certificate tool for multilinear cubic images"};
  app.require_subcommand(1);
  bool diagnostics = false;
  app.add_flag("--diagnostics", diagnostics, "Print floating-point diagnostics (never proof-relevant)");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "Replay a built-in table or verify a certificate file");
  verify->add_option("--table", vo.table, "Built-in table 1..5")->check(CLI::Range(1, 5));
  verify->add_option("--d", vo.d, "Dimension (table 2)");
  verify->add_option("--cert", vo.cert, "Certificate JSON file");
  verify->add_option("--json", vo.json_out, "Write the report as JSON");

  SearchOpts so;
  auto* search = app.add_subcommand("search", "Greedy certificate search at a concrete d");
  search->add_option("--d", so.d, "Dimension")->required();
  search->add_option("--seed", so.seed, "Sampling seed");
  search->add_option("--budget", so.budget, "Candidates sampled per step (default: all)");
  search->add_flag("--max-dim-only", so.max_dim_only, "Score candidates on the top-dimensional part only");
  search->add_option("--target", so.target, "empty or point")->check(CLI::IsMember({"empty", "point"}));
  search->add_option("--out", so.out, "Write the certificate here");

  long ed = 0;
  bool stats = false;
  auto* enumerate = app.add_subcommand("enumerate", "Count one-wiggle families and distinct Omega-sets");
  enumerate->add_option("--d", ed, "Dimension")->required();
  enumerate->add_flag("--stats", stats, "Also print a breakdown by top dimension");

  long od = 0;
  std::size_t trials = 1000;
  std::uint64_t oseed = 1;
  auto* oracle = app.add_subcommand("oracle", "Symbolic-vs-dense equivalence checks");
  oracle->add_option("--d", od, "Dimension, 2..12")->required();
  oracle->add_option("--trials", trials, "Product checks (evaluation checks: trials/5)");
  oracle->add_option("--seed", oseed, "Seed");

  auto* appendix = app.add_subcommand("appendix", "Formal-wiggle identities for the traceless case");
  auto* jordan = app.add_subcommand("jordan", "S3 Jordan-form identities");

  int st = 3;
  std::optional<long> sd;
  auto* sidecheck = app.add_subcommand("sidecheck", "Where the side-condition factors of table 3 or 4 vanish");
  sidecheck->add_option("--table", st, "3 or 4");
  sidecheck->add_option("--d", sd, "Check this dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*verify) return run_verify(vo);
    if (*search) return run_search(so);
    if (*enumerate) return run_enumerate(ed, stats);
    if (*oracle) return run_oracle_cmd(od, trials, oseed);
    if (*appendix) return finish(verify_appendix());
    if (*jordan) return finish(verify_jordan_s3());
    if (*sidecheck) return run_sidecheck(st, sd, diagnostics);
  } catch (const std::exception& e) {
    // usage errors, malformed certificates, bad indices
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
