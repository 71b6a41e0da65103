#include "owf/affine_geometry.hpp"

#include <algorithm>
#include <sstream>

namespace owf {

namespace {

std::string render_row(const std::array<std::string, 5>& entries, const std::array<bool, 5>& zero) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < 4; ++i) {
    if (zero[i]) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << entries[i] << ")*" << kFreeCoefficientNames[i];
  }
  if (!zero[4]) os << (first ? "" : " + ") << "(" << entries[4] << ")";
  if (first && zero[4]) os << "0";
  os << " = 0";
  return os.str();
}

template <class Row>
std::strong_ordering compare_rows(const std::vector<Row>& a, const std::vector<Row>& b) {
  // lower dimension (more rows) first
  if (a.size() != b.size()) return b.size() <=> a.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      if (auto c = a[i][j] <=> b[i][j]; c != 0) return c;
    }
  }
  return std::strong_ordering::equal;
}

template <class Row>
bool rows_subset(const std::vector<Row>& small, const std::vector<Row>& big) {
  for (const auto& r : small) {
    if (std::find(big.begin(), big.end(), r) == big.end()) return false;
  }
  return true;
}

int first_nonzero(const ConcreteRow& r) {
  for (int j = 0; j < 4; ++j) {
    if (!r[static_cast<std::size_t>(j)].is_zero()) return j;
  }
  return -1;
}

int pivot_of(const ConcreteRow& r) { return first_nonzero(r); }

// r -= f * s over columns >= from
void axpy(ConcreteRow& r, const CycloNum& f, const ConcreteRow& s, std::size_t from) {
  for (std::size_t j = from; j < 5; ++j) {
    if (!s[j].is_zero()) r[j] -= f * s[j];
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Concrete mode

std::optional<AffineSubset> AffineSubset::from_rows(const std::vector<ConcreteRow>& rows) {
  AffineSubset acc;
  for (const auto& r : rows) {
    auto next = acc.intersect_row(r);
    if (!next) return std::nullopt;
    acc = std::move(*next);
  }
  return acc;
}

ConcreteRow AffineSubset::reduce(const ConcreteRow& h) const {
  ConcreteRow r = h;
  for (const auto& row : rows_) {
    const auto pc = static_cast<std::size_t>(pivot_of(row));
    if (r[pc].is_zero()) continue;
    const CycloNum f = r[pc];
    axpy(r, f, row, pc);
  }
  return r;
}

std::optional<AffineSubset> AffineSubset::intersect_row(const ConcreteRow& h) const {
  ConcreteRow r = reduce(h);
  const int j = first_nonzero(r);
  if (j < 0) {
    if (r[4].is_zero()) return *this;
    return std::nullopt;
  }
  const auto pj = static_cast<std::size_t>(j);
  if (!r[pj].is_one()) {
    const CycloNum inv = r[pj].inverse();
    for (std::size_t k = pj; k < 5; ++k) {
      if (!r[k].is_zero()) r[k] *= inv;
    }
  }
  AffineSubset out = *this;
  for (auto& row : out.rows_) {
    if (row[pj].is_zero()) continue;
    const CycloNum f = row[pj];
    axpy(row, f, r, pj);
  }
  auto pos = std::find_if(out.rows_.begin(), out.rows_.end(), [&](const ConcreteRow& row) { return pivot_of(row) > j; });
  out.rows_.insert(pos, std::move(r));
  return out;
}

bool AffineSubset::contains(const AffineSubset& other) const {
  for (const auto& row : rows_) {
    const ConcreteRow r = other.reduce(row);
    for (const auto& x : r) {
      if (!x.is_zero()) return false;
    }
  }
  return true;
}

bool AffineSubset::row_subsumes(const AffineSubset& other) const { return rows_subset(rows_, other.rows_); }

bool AffineSubset::contains_point(const ParamPoint<CycloNum>& point) const {
  for (const auto& row : rows_) {
    CycloNum v = row[4];
    for (std::size_t i = 0; i < 4; ++i) {
      if (!row[i].is_zero()) v += row[i] * point[i];
    }
    if (!v.is_zero()) return false;
  }
  return true;
}

std::optional<ParamPoint<CycloNum>> AffineSubset::as_point() const {
  if (dimension() != 0) return std::nullopt;
  ParamPoint<CycloNum> p;
  for (std::size_t i = 0; i < 4; ++i) p[i] = -rows_[i][4];
  return p;
}

std::string AffineSubset::to_string() const {
  if (rows_.empty()) return "{whole space}";
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::array<std::string, 5> e;
    std::array<bool, 5> z{};
    for (std::size_t j = 0; j < 5; ++j) {
      e[j] = rows_[i][j].to_string();
      z[j] = rows_[i][j].is_zero();
    }
    if (i) os << "; ";
    os << render_row(e, z);
  }
  os << "}";
  return os.str();
}

std::strong_ordering operator<=>(const AffineSubset& a, const AffineSubset& b) {
  return compare_rows(a.rows_, b.rows_);
}

std::optional<AffineSubset> intersect(const AffineSubset& a, const AffineSubset& b) {
  const AffineSubset& big = a.rows().size() >= b.rows().size() ? a : b;
  const AffineSubset& small = a.rows().size() >= b.rows().size() ? b : a;
  std::optional<AffineSubset> acc = big;
  for (const auto& r : small.rows()) {
    acc = acc->intersect_row(r);
    if (!acc) return std::nullopt;
  }
  return acc;
}

bool contains_point(const AffineSubset& a, const ParamPoint<CycloNum>& p) { return a.contains_point(p); }

// ---------------------------------------------------------------------------
// Side conditions

void SideConditionSet::add(const OmegaPoly& p) {
  if (p.is_constant()) return;
  polys_.insert(p.primitive_part());
}

void SideConditionSet::merge(const SideConditionSet& other) { polys_.insert(other.polys_.begin(), other.polys_.end()); }

OmegaPoly SideConditionSet::product() const {
  OmegaPoly acc = UniPoly::constant(1);
  for (const auto& p : polys_) acc = acc * p;
  return acc;
}

// ---------------------------------------------------------------------------
// Generic mode

namespace {

bool generic_row_zero(const GenericRow& r) {
  return std::all_of(r.begin(), r.end(), [](const UniPoly& p) { return p.is_zero(); });
}

// Remove the rational content: integer coefficients with gcd 1, and the
// leading coefficient of the first nonzero entry positive.
void make_primitive(GenericRow& r) {
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& p : r) {
    for (const auto& c : p.coefficients()) {
      if (c.is_zero()) continue;
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.numerator().get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.denominator().get_mpz_t());
    }
  }
  if (num_gcd == 0) return;
  Rational scale(den_lcm, num_gcd);
  for (const auto& p : r) {
    if (!p.is_zero()) {
      if (p.leading().sign() < 0) scale = -scale;
      break;
    }
  }
  if (scale.is_one()) return;
  for (auto& p : r) p *= scale;
}

void scale_row(GenericRow& r, const Rational& s) {
  for (auto& p : r) p *= s;
}

}  // namespace

GenericReduction rref_generic(const std::vector<GenericRow>& rows) {
  GenericReduction out;
  std::vector<GenericRow> work;
  for (const auto& r : rows) {
    if (generic_row_zero(r)) continue;
    work.push_back(r);
    make_primitive(work.back());
  }
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < 4; ++col) {
    // Reduce every other entry of the column modulo the lowest-degree one
    // (earliest row on ties) until a single nonzero entry is left. Only
    // unimodular row operations, so the solution set is unchanged for every w.
    std::size_t best = work.size();
    while (true) {
      best = work.size();
      std::size_t count = 0;
      for (std::size_t i = 0; i < work.size(); ++i) {
        if (work[i][col].is_zero()) continue;
        ++count;
        if (best == work.size() || work[i][col].degree() < work[best][col].degree()) best = i;
      }
      if (count <= 1) break;
      scale_row(work[best], work[best][col].leading().inverse());
      for (std::size_t i = 0; i < work.size(); ++i) {
        if (i == best || work[i][col].is_zero()) continue;
        const UniPoly quot = divmod(work[i][col], work[best][col]).quotient;
        for (std::size_t j = 0; j < 5; ++j) work[i][j] -= quot * work[best][j];
        make_primitive(work[i]);
      }
    }
    if (best == work.size()) continue;
    GenericRow piv = std::move(work[best]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
    scale_row(piv, piv[col].leading().inverse());
    std::erase_if(work, generic_row_zero);
    out.rows.push_back(std::move(piv));
    pivot_cols.push_back(col);
  }

  // What is left has only a constant column.
  bool unconditional = false;
  SideConditionSet side;
  for (const auto& r : work) {
    if (r[4].is_zero()) continue;
    if (r[4].is_constant()) {
      unconditional = true;
    } else {
      side.add(r[4]);
    }
  }
  if (unconditional || !side.empty()) {
    out.rows.clear();
    out.empty = true;
    if (!unconditional) out.side_conditions = std::move(side);
    return out;
  }

  // Entries above each pivot get degree below the pivot's (division by a monic).
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const std::size_t col = pivot_cols[i];
    const UniPoly& p = out.rows[i][col];
    for (std::size_t k = 0; k < i; ++k) {
      GenericRow& r = out.rows[k];
      if (r[col].is_zero() || r[col].degree() < p.degree()) continue;
      const UniPoly quot = divmod(r[col], p).quotient;
      for (std::size_t j = col; j < 5; ++j) r[j] -= quot * out.rows[i][j];
    }
  }
  return out;
}

std::optional<GenericAffineSubset> GenericAffineSubset::from_rows(const std::vector<GenericRow>& rows,
                                                                  SideConditionSet& side) {
  auto red = rref_generic(rows);
  if (red.empty) {
    side.merge(red.side_conditions);
    return std::nullopt;
  }
  GenericAffineSubset s;
  s.rows_ = std::move(red.rows);
  return s;
}

bool GenericAffineSubset::row_subsumes(const GenericAffineSubset& other) const {
  return rows_subset(rows_, other.rows_);
}

std::string GenericAffineSubset::to_string() const {
  if (rows_.empty()) return "{whole space}";
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::array<std::string, 5> e;
    std::array<bool, 5> z{};
    for (std::size_t j = 0; j < 5; ++j) {
      e[j] = rows_[i][j].to_string("w");
      z[j] = rows_[i][j].is_zero();
    }
    if (i) os << "; ";
    os << render_row(e, z);
  }
  os << "}";
  return os.str();
}

std::strong_ordering operator<=>(const GenericAffineSubset& a, const GenericAffineSubset& b) {
  return compare_rows(a.rows_, b.rows_);
}

std::optional<GenericAffineSubset> intersect(const GenericAffineSubset& a, const GenericAffineSubset& b,
                                             SideConditionSet& side) {
  if (b.rows().empty()) return a;
  if (a.rows().empty()) return b;
  std::vector<GenericRow> stacked = a.rows();
  stacked.insert(stacked.end(), b.rows().begin(), b.rows().end());
  return GenericAffineSubset::from_rows(stacked, side);
}

// ---------------------------------------------------------------------------
// Forms

FormSubset<AffineSubset> subset_from_form(const AffineForm<CycloNum>& form) {
  if (form.is_identically_zero()) return {FormKind::AlwaysZero, std::nullopt};
  if (form.is_constant()) return {FormKind::NeverZero, std::nullopt};
  const ConcreteRow row{form.linear[0], form.linear[1], form.linear[2], form.linear[3], form.constant};
  return {FormKind::Subset, AffineSubset().intersect_row(row)};
}

FormSubset<GenericAffineSubset> subset_from_form(const AffineForm<UniPoly>& form, SideConditionSet& side) {
  if (form.is_identically_zero()) return {FormKind::AlwaysZero, std::nullopt};
  if (form.is_constant()) {
    side.add(form.constant);
    return {FormKind::NeverZero, std::nullopt};
  }
  const GenericRow row{form.linear[0], form.linear[1], form.linear[2], form.linear[3], form.constant};
  return {FormKind::Subset, GenericAffineSubset::from_rows({row}, side)};
}

// ---------------------------------------------------------------------------
// Goodness

bool GoodnessSignature::is_empty_union() const { return total() == 0; }

int GoodnessSignature::max_dimension() const {
  for (int k = 4; k >= 0; --k) {
    if (count_by_dim[static_cast<std::size_t>(k)] != 0) return k;
  }
  return -1;
}

std::vector<std::pair<int, std::size_t>> GoodnessSignature::pairs() const {
  std::vector<std::pair<int, std::size_t>> out;
  for (int k = 4; k >= 0; --k) {
    const auto n = count_by_dim[static_cast<std::size_t>(k)];
    if (n != 0) out.emplace_back(k, n);
  }
  return out;
}

std::size_t GoodnessSignature::total() const {
  std::size_t n = 0;
  for (auto c : count_by_dim) n += c;
  return n;
}

std::string GoodnessSignature::to_string() const {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [dim, n] : pairs()) {
    if (!first) os << ", ";
    first = false;
    os << "(" << dim << "," << n << ")";
  }
  os << "]";
  return os.str();
}

std::strong_ordering operator<=>(const GoodnessSignature& a, const GoodnessSignature& b) {
  for (int k = 4; k >= 0; --k) {
    const auto i = static_cast<std::size_t>(k);
    if (auto c = a.count_by_dim[i] <=> b.count_by_dim[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Unions

template <class Subset>
AffineUnion<Subset>::AffineUnion(std::vector<Subset> members, bool prune) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!prune || members_.size() < 2) return;
  // Sorted with the smallest dimension first, so a subsuming member is later.
  std::vector<bool> drop(members_.size(), false);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (std::size_t j = i + 1; j < members_.size(); ++j) {
      if (members_[j].dimension() > members_[i].dimension() && members_[j].row_subsumes(members_[i])) {
        drop[i] = true;
        break;
      }
    }
  }
  std::vector<Subset> kept;
  kept.reserve(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (!drop[i]) kept.push_back(std::move(members_[i]));
  }
  members_ = std::move(kept);
}

template <class Subset>
GoodnessSignature AffineUnion<Subset>::goodness() const {
  GoodnessSignature g;
  for (const auto& m : members_) ++g.count_by_dim[static_cast<std::size_t>(m.dimension())];
  return g;
}

template <class Subset>
AffineUnion<Subset> AffineUnion<Subset>::max_dimension_part() const {
  if (members_.empty()) return {};
  const int top = members_.back().dimension();
  std::vector<Subset> out;
  for (const auto& m : members_) {
    if (m.dimension() == top) out.push_back(m);
  }
  return AffineUnion(std::move(out), false);
}

template class AffineUnion<AffineSubset>;
template class AffineUnion<GenericAffineSubset>;

namespace {

// Images of every member's rows in F_p, used only to skip pairs that are
// certainly disjoint (a point where some equation of the other side is
// nonzero mod p, hence nonzero).
struct ModMember {
  bool mapped = false;
  std::vector<std::array<std::uint64_t, 5>> rows;
};

const CycloField* field_of(const UnionOfAffine& u) {
  for (const auto& m : u.members()) {
    for (const auto& r : m.rows()) {
      for (const auto& x : r) {
        if (x.field()) return x.field();
      }
    }
  }
  return nullptr;
}

std::vector<ModMember> mod_members(const UnionOfAffine& u, const ModularImage& img) {
  std::vector<ModMember> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto& mm = out[i];
    mm.mapped = true;
    for (const auto& r : u.members()[i].rows()) {
      std::array<std::uint64_t, 5> mr{};
      for (std::size_t j = 0; j < 5 && mm.mapped; ++j) {
        const auto v = img.map(r[j]);
        if (!v) mm.mapped = false;
        else mr[j] = *v;
      }
      if (!mm.mapped) break;
      mm.rows.push_back(mr);
    }
  }
  return out;
}

// `pt` is a 0-dimensional member: row i is a_i + c_i = 0, so a_i = -c_i.
bool misses_point(const ModMember& pt, const ModMember& other, const ModularImage& img) {
  for (const auto& h : other.rows) {
    std::uint64_t v = h[4];
    for (std::size_t i = 0; i < 4; ++i) {
      if (h[i] == 0) continue;
      const std::uint64_t c = pt.rows[i][4];
      v = img.add(v, img.mul(h[i], c == 0 ? 0 : img.prime() - c));
    }
    if (v != 0) return true;
  }
  return false;
}

class DisjointFilter {
 public:
  DisjointFilter(const UnionOfAffine& theta, const UnionOfAffine& phi) {
    const CycloField* f = field_of(theta);
    if (!f) f = field_of(phi);
    if (!f) return;
    img_ = &ModularImage::of(f->d());
    a_ = mod_members(theta, *img_);
    b_ = mod_members(phi, *img_);
  }
  [[nodiscard]] bool certainly_disjoint(std::size_t i, const AffineSubset& a, std::size_t j,
                                        const AffineSubset& b) const {
    if (!img_ || !a_[i].mapped || !b_[j].mapped) return false;
    if (a.dimension() == 0) return misses_point(a_[i], b_[j], *img_);
    if (b.dimension() == 0) return misses_point(b_[j], a_[i], *img_);
    return false;
  }

 private:
  const ModularImage* img_ = nullptr;
  std::vector<ModMember> a_, b_;
};

using ModRow = std::array<std::uint64_t, 5>;

// Outcome of solving a's and b's equations together over F_p.
enum class ModSolve { Inconsistent, Point, Other };

// Rank facts transfer upward: F_p rank r means exact rank >= r. So an F_p
// rank-5 augmented system is exactly inconsistent, and F_p rank 4 in the
// coefficient columns makes the exact solution a single point whose image is
// the F_p solution (its 4x4 minor is a unit at p).
ModSolve solve_mod(const ModMember& a, const ModMember& b, const ModularImage& img, std::array<std::uint64_t, 4>& pt) {
  std::vector<ModRow> rows(a.rows);
  rows.insert(rows.end(), b.rows.begin(), b.rows.end());
  std::size_t rank = 0;
  std::array<int, 4> pivot_row{-1, -1, -1, -1};
  for (std::size_t c = 0; c < 5 && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && rows[r][c] == 0) ++r;
    if (r == rows.size()) continue;
    if (c == 4) return ModSolve::Inconsistent;
    std::swap(rows[r], rows[rank]);
    const std::uint64_t iv = img.inv(rows[rank][c]);
    for (auto& x : rows[rank]) x = img.mul(x, iv);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == rank || rows[k][c] == 0) continue;
      const std::uint64_t f = rows[k][c];
      for (std::size_t j = c; j < 5; ++j) rows[k][j] = img.sub(rows[k][j], img.mul(f, rows[rank][j]));
    }
    pivot_row[c] = static_cast<int>(rank);
    ++rank;
  }
  if (rank < 4) return ModSolve::Other;
  for (std::size_t i = 0; i < 4; ++i) {
    const std::uint64_t c = rows[static_cast<std::size_t>(pivot_row[i])][4];
    pt[i] = c == 0 ? 0 : img.prime() - c;
  }
  return ModSolve::Point;
}

bool point_misses(const std::array<std::uint64_t, 4>& pt, const ModMember& m, const ModularImage& img) {
  for (const auto& h : m.rows) {
    std::uint64_t v = h[4];
    for (std::size_t i = 0; i < 4; ++i) {
      if (h[i] != 0) v = img.add(v, img.mul(h[i], pt[i]));
    }
    if (v != 0) return true;
  }
  return false;
}

}  // namespace

UnionOfAffine intersect_unions_lookahead(const UnionOfAffine& theta, const UnionOfAffine& phi,
                                         const UnionOfAffine& next, std::size_t& skipped) {
  skipped = 0;
  const CycloField* f = field_of(theta);
  if (!f) f = field_of(phi);
  if (!f) f = field_of(next);
  if (!f) return intersect_unions(theta, phi);
  const auto& img = ModularImage::of(f->d());
  const auto ma = mod_members(theta, img);
  const auto mb = mod_members(phi, img);
  const auto mn = mod_members(next, img);
  const bool next_mapped = std::all_of(mn.begin(), mn.end(), [](const ModMember& m) { return m.mapped; });
  std::vector<AffineSubset> out;
  std::array<std::uint64_t, 4> pt{};
  for (std::size_t i = 0; i < theta.size(); ++i) {
    for (std::size_t j = 0; j < phi.size(); ++j) {
      if (ma[i].mapped && mb[j].mapped) {
        const auto s = solve_mod(ma[i], mb[j], img, pt);
        if (s == ModSolve::Inconsistent) continue;
        if (s == ModSolve::Point && next_mapped &&
            std::all_of(mn.begin(), mn.end(), [&](const ModMember& m) { return point_misses(pt, m, img); })) {
          ++skipped;
          continue;
        }
      }
      if (auto s = intersect(theta.members()[i], phi.members()[j])) out.push_back(std::move(*s));
    }
  }
  return UnionOfAffine(std::move(out));
}

UnionOfAffine intersect_unions(const UnionOfAffine& theta, const UnionOfAffine& phi) {
  const DisjointFilter filter(theta, phi);
  std::vector<AffineSubset> out;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const auto& a = theta.members()[i];
    for (std::size_t j = 0; j < phi.size(); ++j) {
      const auto& b = phi.members()[j];
      if (filter.certainly_disjoint(i, a, j, b)) continue;
      if (auto s = intersect(a, b)) out.push_back(std::move(*s));
    }
  }
  return UnionOfAffine(std::move(out));
}

std::optional<UnionOfAffine> intersect_unions_bounded(const UnionOfAffine& theta, const UnionOfAffine& phi,
                                                      const GoodnessSignature& bound) {
  const int top = bound.max_dimension();
  const std::size_t allowed = top < 0 ? 0 : bound.count_by_dim[static_cast<std::size_t>(top)];
  // A member above `top`, or more than `allowed` distinct members at `top`,
  // survives pruning (only a higher member could prune it) and loses.
  const DisjointFilter filter(theta, phi);
  std::set<AffineSubset> at_top;
  std::vector<AffineSubset> out;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const auto& a = theta.members()[i];
    for (std::size_t j = 0; j < phi.size(); ++j) {
      const auto& b = phi.members()[j];
      if (filter.certainly_disjoint(i, a, j, b)) continue;
      auto s = intersect(a, b);
      if (!s) continue;
      const int dim = s->dimension();
      if (dim > top) return std::nullopt;
      if (dim == top) {
        at_top.insert(*s);
        if (at_top.size() > allowed) return std::nullopt;
      }
      out.push_back(std::move(*s));
    }
  }
  return UnionOfAffine(std::move(out));
}

GenericUnion intersect_unions(const GenericUnion& theta, const GenericUnion& phi, SideConditionSet& side) {
  std::vector<GenericAffineSubset> out;
  for (const auto& a : theta.members()) {
    for (const auto& b : phi.members()) {
      if (auto s = intersect(a, b, side)) out.push_back(std::move(*s));
    }
  }
  // No pruning here: the side conditions should come from every pairwise
  // elimination, as in the published factor lists.
  return GenericUnion(std::move(out), false);
}

}  // namespace owf
