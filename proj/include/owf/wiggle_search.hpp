#pragma once

#include "owf/affine_geometry.hpp"
#include "owf/clock_shift.hpp"
#include "owf/poly_eval.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace owf {

struct InvalidFamily : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Two fixed basis unitaries plus one wiggled slot. `slot` is 1-based.
struct WiggleFamily {
  long d = 3;
  int slot = 3;
  std::array<BasisUnitary, 2> fixed;

  /// The three arguments with `w` placed in the wiggle slot.
  [[nodiscard]] std::array<BasisUnitary, 3> arguments(const BasisUnitary& w) const;
  /// Row index the wiggle must carry so the product lands in row `target_row`.
  [[nodiscard]] long wiggle_row(long target_row) const;
  /// e.g. "f(u^1_0, u^2_2, u^p_q)"
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const WiggleFamily&, const WiggleFamily&) = default;
  friend auto operator<=>(const WiggleFamily&, const WiggleFamily&) = default;
};

struct FamilyEntry {
  BasisUnitary wiggle;
  BasisUnitary target;
  AffineForm<CycloNum> coeff;
};

/// 2d entries: target row 0 then row 1, wiggle column 0..d-1.
struct FamilyEvaluation {
  WiggleFamily family;
  std::vector<FamilyEntry> entries;
  /// No required coefficient is identically zero.
  [[nodiscard]] bool valid() const;
};

/// Throws InvalidFamily for a bad slot or indices of the wrong dimension.
FamilyEvaluation evaluate_family(const CycloField& field, const WiggleFamily& family);

/// Union of the vanishing loci; throws InvalidFamily on an always-zero form.
UnionOfAffine omega_set(const FamilyEvaluation& ev);
UnionOfAffine omega_set(const CycloField& field, const WiggleFamily& family);

struct EnumeratedFamily {
  WiggleFamily family;
  UnionOfAffine omega;
};

struct Enumeration {
  std::size_t candidates = 0;
  std::vector<EnumeratedFamily> valid;
  /// Index into `valid` of the first family with each distinct Omega-set,
  /// in enumeration order.
  std::vector<std::size_t> distinct;
};

/// All 3 d^4 (slot, fixed pair) candidates in order slot, p1, q1, p2, q2.
Enumeration enumerate_families(const CycloField& field);

enum class SearchTarget { Empty, Point };
std::string to_string(SearchTarget t);

struct SearchConfig {
  std::uint64_t seed = 0;
  /// Candidates tested per step; unset means all (deterministic mode).
  std::optional<std::size_t> budget;
  bool max_dim_only = false;
  SearchTarget target = SearchTarget::Empty;
  std::size_t max_steps = 64;
};

struct SearchStep {
  WiggleFamily family;
  GoodnessSignature signature;
  std::size_t members = 0;
  std::size_t candidates_tested = 0;
};

struct SearchResult {
  std::vector<SearchStep> steps;
  UnionOfAffine final_union;
  bool reached_target = false;
  std::string stop_reason;

  [[nodiscard]] std::vector<WiggleFamily> families() const;
};

bool target_reached(const UnionOfAffine& u, SearchTarget t);

/// Greedy selection over the given candidates (one per distinct Omega-set is
/// enough). Ties go to the earliest candidate.
SearchResult greedy_search(const std::vector<EnumeratedFamily>& candidates, const SearchConfig& config);

/// Folds intersect_unions over the Omega-sets in order. Signatures after
/// each step go to `trace` when given.
UnionOfAffine replay(const CycloField& field, const std::vector<WiggleFamily>& families,
                     std::vector<GoodnessSignature>* trace = nullptr);

}  // namespace owf
