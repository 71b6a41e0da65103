#pragma once

#include "owf/cyclotomic.hpp"
#include "owf/poly_eval.hpp"
#include "owf/unipoly.hpp"

#include <array>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace owf {

/// One affine equation r0*a123 + r1*a132 + r2*a213 + r3*a231 + r4 = 0.
using ConcreteRow = std::array<CycloNum, 5>;
using GenericRow = std::array<UniPoly, 5>;

inline constexpr int kParameterDim = 4;

/// Nonempty affine subset of the 4-dimensional coefficient space over
/// Q(omega_d), stored as a reduced row-echelon matrix without zero rows.
/// Pivots are 1 and pivot columns are otherwise zero.
class AffineSubset {
 public:
  /// The whole space (no equations).
  AffineSubset() = default;

  /// RREF of the given rows; nullopt if the system is inconsistent.
  static std::optional<AffineSubset> from_rows(const std::vector<ConcreteRow>& rows);

  [[nodiscard]] const std::vector<ConcreteRow>& rows() const { return rows_; }
  [[nodiscard]] int dimension() const { return kParameterDim - static_cast<int>(rows_.size()); }

  /// h minus its projection onto the pivot rows.
  [[nodiscard]] ConcreteRow reduce(const ConcreteRow& h) const;
  /// this ∩ {h = 0}; nullopt if empty.
  [[nodiscard]] std::optional<AffineSubset> intersect_row(const ConcreteRow& h) const;
  /// True iff other ⊆ this (exact, by solving).
  [[nodiscard]] bool contains(const AffineSubset& other) const;
  /// Cheap check: every row of this is a row of other.
  [[nodiscard]] bool row_subsumes(const AffineSubset& other) const;
  [[nodiscard]] bool contains_point(const ParamPoint<CycloNum>& point) const;
  /// The unique point of a 0-dimensional subset.
  [[nodiscard]] std::optional<ParamPoint<CycloNum>> as_point() const;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const AffineSubset& a, const AffineSubset& b) { return a.rows_ == b.rows_; }
  friend std::strong_ordering operator<=>(const AffineSubset& a, const AffineSubset& b);

 private:
  std::vector<ConcreteRow> rows_;
};

std::optional<AffineSubset> intersect(const AffineSubset& a, const AffineSubset& b);

/// Polynomials in omega assumed nonvanishing; stored primitive with positive
/// leading coefficient. Nonzero constants are never recorded.
class SideConditionSet {
 public:
  void add(const OmegaPoly& p);
  void merge(const SideConditionSet& other);
  [[nodiscard]] const std::set<OmegaPoly>& polys() const { return polys_; }
  [[nodiscard]] bool empty() const { return polys_.empty(); }
  [[nodiscard]] OmegaPoly product() const;

 private:
  std::set<OmegaPoly> polys_;
};

/// Affine subset over Q[omega] for symbolic omega (generic mode).
///
/// Row echelon form: each pivot is a monic polynomial, entries above a pivot
/// have strictly lower degree, and no division by a positive-degree
/// polynomial ever happens.
class GenericAffineSubset {
 public:
  GenericAffineSubset() = default;

  /// Division-free elimination; nullopt if an inconsistency row (0,0,0,0,p)
  /// appears, in which case p (if nonconstant) is added to `side`.
  static std::optional<GenericAffineSubset> from_rows(const std::vector<GenericRow>& rows, SideConditionSet& side);

  [[nodiscard]] const std::vector<GenericRow>& rows() const { return rows_; }
  [[nodiscard]] int dimension() const { return kParameterDim - static_cast<int>(rows_.size()); }
  [[nodiscard]] bool row_subsumes(const GenericAffineSubset& other) const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const GenericAffineSubset& a, const GenericAffineSubset& b) = default;
  friend std::strong_ordering operator<=>(const GenericAffineSubset& a, const GenericAffineSubset& b);

 private:
  std::vector<GenericRow> rows_;
};

std::optional<GenericAffineSubset> intersect(const GenericAffineSubset& a, const GenericAffineSubset& b,
                                             SideConditionSet& side);

/// Result of rref_generic: the reduced rows, or empty with the emitted
/// side conditions.
struct GenericReduction {
  std::vector<GenericRow> rows;
  bool empty = false;
  SideConditionSet side_conditions;
};
GenericReduction rref_generic(const std::vector<GenericRow>& rows);

enum class FormKind { Subset, NeverZero, AlwaysZero };

template <class Subset>
struct FormSubset {
  FormKind kind = FormKind::AlwaysZero;
  std::optional<Subset> subset;
};

/// Vanishing locus of a coefficient form, first nonzero entry scaled to 1.
FormSubset<AffineSubset> subset_from_form(const AffineForm<CycloNum>& form);
/// Generic mode: the row is made monic in its first nonzero entry. A
/// nonconstant polynomial constant term on an otherwise zero form is
/// NeverZero under the side condition it emits.
FormSubset<GenericAffineSubset> subset_from_form(const AffineForm<UniPoly>& form, SideConditionSet& side);

/// Dimension histogram. Lexicographically smaller is better: compare subset
/// counts from dimension 4 downwards. The empty union is the unique minimum.
struct GoodnessSignature {
  std::array<std::size_t, 5> count_by_dim{};  // index = dimension

  [[nodiscard]] bool is_empty_union() const;
  [[nodiscard]] int max_dimension() const;  // -1 for the empty union
  /// (dimension, count) pairs, dimensions descending, zero counts skipped.
  [[nodiscard]] std::vector<std::pair<int, std::size_t>> pairs() const;
  [[nodiscard]] std::size_t total() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const GoodnessSignature&, const GoodnessSignature&) = default;
  friend std::strong_ordering operator<=>(const GoodnessSignature& a, const GoodnessSignature& b);
};

/// Deduplicated union of affine subsets in canonical order. With `prune`,
/// members whose rows include all rows of another member are dropped.
template <class Subset>
class AffineUnion {
 public:
  AffineUnion() = default;
  explicit AffineUnion(std::vector<Subset> members, bool prune = true);

  [[nodiscard]] const std::vector<Subset>& members() const { return members_; }
  [[nodiscard]] bool empty() const { return members_.empty(); }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] GoodnessSignature goodness() const;
  /// Members of maximal dimension.
  [[nodiscard]] AffineUnion max_dimension_part() const;

  friend bool operator==(const AffineUnion&, const AffineUnion&) = default;

 private:
  std::vector<Subset> members_;
};

using UnionOfAffine = AffineUnion<AffineSubset>;
using GenericUnion = AffineUnion<GenericAffineSubset>;

/// Union of all nonempty pairwise intersections. The generic overload keeps
/// every member (no pruning).
UnionOfAffine intersect_unions(const UnionOfAffine& theta, const UnionOfAffine& phi);
GenericUnion intersect_unions(const GenericUnion& theta, const GenericUnion& phi, SideConditionSet& side);

/// intersect_unions, except that a pairwise intersection which is a single
/// point certainly outside every member of `next` is not built; it could not
/// survive intersection with `next` anyway. The certainty comes from an F_p
/// image of the equations. `skipped` counts such pairs.
UnionOfAffine intersect_unions_lookahead(const UnionOfAffine& theta, const UnionOfAffine& phi,
                                         const UnionOfAffine& next, std::size_t& skipped);

/// intersect_unions, giving up (nullopt) as soon as the result is certain to
/// have a strictly worse signature than `bound`. Only the top dimension of
/// `bound` is used for the cutoff.
std::optional<UnionOfAffine> intersect_unions_bounded(const UnionOfAffine& theta, const UnionOfAffine& phi,
                                                      const GoodnessSignature& bound);

template <class Subset>
GoodnessSignature goodness(const AffineUnion<Subset>& u) {
  return u.goodness();
}

bool contains_point(const AffineSubset& a, const ParamPoint<CycloNum>& p);

extern template class AffineUnion<AffineSubset>;
extern template class AffineUnion<GenericAffineSubset>;

}  // namespace owf
