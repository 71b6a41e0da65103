#pragma once

#include "owf/affine_geometry.hpp"
#include "owf/clock_shift.hpp"
#include "owf/poly_eval.hpp"
#include "owf/wiggle_search.hpp"

#include "json.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace owf {

/// Malformed certificate or form text (an input error, not a failed proof).
struct CertificateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CertKind { ConcreteOdd, Concrete, GenericCOdd, GenericCEven, D4Special };
std::string to_string(CertKind k);
CertKind parse_cert_kind(std::string_view s);

/// Wiggle slot plus the two fixed units as (p, q) index forms a + b*c.
/// Concrete kinds use b == 0 everywhere.
struct FamilyDescriptor {
  int slot = 3;
  std::array<std::array<LinearIndex, 2>, 2> fixed{};

  [[nodiscard]] bool is_concrete() const;
  [[nodiscard]] WiggleFamily instantiate(long d) const;  // c = d / 2 for parametric entries
  [[nodiscard]] std::array<ParamUnitary, 3> param_triple(long target_row) const;
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const FamilyDescriptor&, const FamilyDescriptor&) = default;
};

/// One table row: family evaluated with the wiggle in target row `row` and
/// column parity `q_parity`, landing on u^row_{q + target_q}.
struct ExpectedForm {
  long row = 0;
  Parity q_parity = Parity::Even;
  std::optional<LinearIndex> target_q;
  std::string form;
  /// What the published table prints, when that differs from `form` (an erratum).
  std::optional<std::string> printed;
  friend bool operator==(const ExpectedForm&, const ExpectedForm&) = default;
};

enum class Outcome { Empty, Points };

struct Certificate {
  std::string name;
  CertKind kind = CertKind::Concrete;
  std::optional<long> d;
  std::optional<Parity> c_parity;
  std::vector<FamilyDescriptor> families;
  /// Parallel to `families` when present; an empty inner list means no table rows.
  std::vector<std::vector<ExpectedForm>> expected_forms;
  Outcome outcome = Outcome::Empty;
  std::vector<std::array<Rational, 4>> points;
  std::vector<OmegaPoly> side_condition_factors;
  std::optional<std::vector<long>> exceptional_d;
  std::vector<std::string> notes;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

nlohmann::json to_json(const Certificate& c);
/// Throws CertificateError on anything that does not match the schema.
Certificate certificate_from_json(const nlohmann::json& j);
Certificate load_certificate(const std::string& path);
void save_certificate(const Certificate& c, const std::string& path);

/// Parses e.g. "-(1 + w^-1) - (1 - w^-1)*a132 + 2*w*a213" into an affine form
/// with Laurent coefficients. Throws CertificateError.
AffineForm<LaurentPoly> parse_form(std::string_view text);

// ---------------------------------------------------------------------------

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct Report {
  std::string subject;
  std::vector<Check> checks;
  std::vector<std::string> steps;
  std::vector<std::string> notes;
  std::string result;
  nlohmann::json data = nlohmann::json::object();
  double seconds = 0;

  void add(std::string name, bool ok, std::string detail = {});
  [[nodiscard]] bool passed() const;
  [[nodiscard]] std::vector<std::string> failures() const;
  [[nodiscard]] std::string to_text() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Dispatches on the certificate kind.
Report verify(const Certificate& cert);
Report verify_concrete(const Certificate& cert);
Report verify_generic_even(const Certificate& cert);
Report verify_d4(const Certificate& cert);

/// Compare a derived Laurent form with a table form: equal, or equal up to a
/// unit (table = r*w^k*derived, reported), or mismatch.
struct FormComparison {
  bool equal = false;
  bool unit_multiple = false;
  Rational unit_scalar{1};
  long unit_power = 0;
};
FormComparison compare_forms(const AffineForm<LaurentPoly>& derived, const AffineForm<LaurentPoly>& table);

/// Multiplicities of `factors` in `product`, and what is left after removing
/// them all (a constant iff the degree is fully accounted for).
struct FactorAccounting {
  std::vector<int> multiplicity;
  OmegaPoly leftover;
  [[nodiscard]] bool complete() const { return leftover.degree() == 0; }
};
FactorAccounting account_factors(const OmegaPoly& product, const std::vector<OmegaPoly>& factors);

/// Dimensions d in the class {d >= 6, d = 2 mod 4} (c odd) or {d >= 4,
/// d = 0 mod 4} (c even) where some side condition vanishes at a primitive
/// d-th root of unity.
std::vector<long> exceptional_dimensions(const SideConditionSet& side, Parity c_parity);

/// The same families instantiated at a concrete even d (c = d/2).
Certificate instantiate_generic(const Certificate& cert, long d);

/// Replayable certificate for a search result. The expected outcome is the
/// final union (empty, or its points when they are all rational); anything
/// else is written as "empty" with a note, so it fails verification.
Certificate certificate_from_search(const SearchResult& res, long d);

// ---------------------------------------------------------------------------
// Built-in certificates transcribed from the tables.

/// table 1: d = 3; table 2: d in {5,7,9,11,13,15,21,35}; tables 3 and 4:
/// generic; table 5: d = 4 (tables 4 and 5 together).
Certificate builtin_certificate(int table, std::optional<long> d = std::nullopt);
std::vector<long> table2_dimensions();

// ---------------------------------------------------------------------------
// Self-contained symbolic checks.

Report verify_jordan_s3();
Report verify_appendix();

enum class CoefficientClass { FullCandidate, SumOfCommutators, Zero };
std::string to_string(CoefficientClass c);
/// Six coefficients in kWords order (a123, a132, a213, a231, a312, a321).
CoefficientClass classify_coefficients(const std::array<Rational, 6>& a);

}  // namespace owf
