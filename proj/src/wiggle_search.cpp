#include "owf/wiggle_search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace owf {

namespace {

long mod(long x, long d) {
  long r = x % d;
  return r < 0 ? r + d : r;
}

void check_family(const WiggleFamily& f, long d) {
  if (f.slot < 1 || f.slot > 3) throw InvalidFamily("wiggle slot must be 1, 2 or 3, got " + std::to_string(f.slot));
  if (f.d != d) throw InvalidFamily("family dimension " + std::to_string(f.d) + " differs from " + std::to_string(d));
  for (const auto& u : f.fixed) {
    if (u.d != d) throw InvalidFamily("fixed unitary " + u.to_string() + " has the wrong dimension");
  }
}

}  // namespace

std::array<BasisUnitary, 3> WiggleFamily::arguments(const BasisUnitary& w) const {
  switch (slot) {
    case 1: return {w, fixed[0], fixed[1]};
    case 2: return {fixed[0], w, fixed[1]};
    default: return {fixed[0], fixed[1], w};
  }
}

long WiggleFamily::wiggle_row(long target_row) const { return mod(target_row - fixed[0].p - fixed[1].p, d); }

std::string WiggleFamily::to_string() const {
  const std::string w = "u^p_q";
  std::array<std::string, 3> s;
  std::size_t k = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (static_cast<int>(i) + 1 == slot) {
      s[i] = w;
    } else {
      s[i] = fixed[k++].to_string();
    }
  }
  return "f(" + s[0] + ", " + s[1] + ", " + s[2] + ")";
}

bool FamilyEvaluation::valid() const {
  return std::none_of(entries.begin(), entries.end(), [](const FamilyEntry& e) { return e.coeff.is_identically_zero(); });
}

FamilyEvaluation evaluate_family(const CycloField& field, const WiggleFamily& family) {
  const long d = field.d();
  check_family(family, d);
  FamilyEvaluation out;
  out.family = family;
  out.entries.reserve(static_cast<std::size_t>(2 * d));
  for (long row = 0; row < 2; ++row) {
    const long p = family.wiggle_row(row);
    for (long q = 0; q < d; ++q) {
      const BasisUnitary w(p, q, d);
      auto ev = evaluate_on_units(field, family.arguments(w));
      out.entries.push_back({w, ev.target, std::move(ev.coeff)});
    }
  }
  return out;
}

UnionOfAffine omega_set(const FamilyEvaluation& ev) {
  std::vector<AffineSubset> members;
  for (const auto& e : ev.entries) {
    auto s = subset_from_form(e.coeff);
    if (s.kind == FormKind::AlwaysZero) {
      throw InvalidFamily(ev.family.to_string() + ": coefficient of " + e.target.to_string() + " is identically zero");
    }
    if (s.kind == FormKind::Subset) members.push_back(std::move(*s.subset));
  }
  return UnionOfAffine(std::move(members));
}

UnionOfAffine omega_set(const CycloField& field, const WiggleFamily& family) {
  return omega_set(evaluate_family(field, family));
}

Enumeration enumerate_families(const CycloField& field) {
  const long d = field.d();
  Enumeration out;
  std::map<std::vector<AffineSubset>, std::size_t> seen;
  for (int slot = 1; slot <= 3; ++slot) {
    for (long p1 = 0; p1 < d; ++p1) {
      for (long q1 = 0; q1 < d; ++q1) {
        for (long p2 = 0; p2 < d; ++p2) {
          for (long q2 = 0; q2 < d; ++q2) {
            ++out.candidates;
            WiggleFamily fam{d, slot, {BasisUnitary(p1, q1, d), BasisUnitary(p2, q2, d)}};
            auto ev = evaluate_family(field, fam);
            if (!ev.valid()) continue;
            auto omega = omega_set(ev);
            const std::size_t idx = out.valid.size();
            if (seen.emplace(omega.members(), idx).second) out.distinct.push_back(idx);
            out.valid.push_back({fam, std::move(omega)});
          }
        }
      }
    }
  }
  return out;
}

std::string to_string(SearchTarget t) { return t == SearchTarget::Empty ? "empty" : "point"; }

std::vector<WiggleFamily> SearchResult::families() const {
  std::vector<WiggleFamily> out;
  for (const auto& s : steps) out.push_back(s.family);
  return out;
}

bool target_reached(const UnionOfAffine& u, SearchTarget t) {
  if (t == SearchTarget::Empty) return u.empty();
  return u.size() == 1 && u.members().front().dimension() == 0;
}

SearchResult greedy_search(const std::vector<EnumeratedFamily>& candidates, const SearchConfig& config) {
  SearchResult res;
  if (candidates.empty()) {
    res.stop_reason = "no candidates";
    return res;
  }

  // Initial family: best standalone signature, earliest on ties.
  std::size_t first = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].omega.goodness() < candidates[first].omega.goodness()) first = i;
  }
  std::vector<bool> used(candidates.size(), false);
  used[first] = true;
  UnionOfAffine phi = candidates[first].omega;
  res.steps.push_back({candidates[first].family, phi.goodness(), phi.size(), candidates.size()});

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(candidates.size());

  while (true) {
    if (target_reached(phi, config.target)) {
      res.reached_target = true;
      res.stop_reason = "target reached";
      break;
    }
    if (phi.empty()) {
      res.stop_reason = "empty union";
      break;
    }
    if (res.steps.size() >= config.max_steps) {
      res.stop_reason = "step limit";
      break;
    }
    const UnionOfAffine base = config.max_dim_only ? phi.max_dimension_part() : phi;
    const GoodnessSignature base_sig = base.goodness();

    std::iota(order.begin(), order.end(), std::size_t{0});
    std::size_t limit = candidates.size();
    if (config.budget) {
      std::shuffle(order.begin(), order.end(), rng);
      limit = std::min(limit, *config.budget);
    }
    const std::size_t patience = config.budget ? std::min<std::size_t>(32, *config.budget) : candidates.size();

    std::optional<std::size_t> best;
    GoodnessSignature best_sig;
    std::size_t best_size = 0;
    UnionOfAffine best_union;
    std::size_t tested = 0;
    for (std::size_t k = 0; k < order.size() && tested < limit; ++k) {
      const std::size_t i = order[k];
      if (used[i]) continue;
      ++tested;
      std::optional<UnionOfAffine> bounded =
          best ? intersect_unions_bounded(base, candidates[i].omega, best_sig)
               : std::optional<UnionOfAffine>(intersect_unions(base, candidates[i].omega));
      if (!bounded) {
        if (config.budget && tested >= patience && best_sig < base_sig) break;
        continue;
      }
      UnionOfAffine next = std::move(*bounded);
      const GoodnessSignature sig = next.goodness();
      const bool better = !best || sig < best_sig || (sig == best_sig && next.size() < best_size) ||
                          (sig == best_sig && next.size() == best_size && i < *best);
      if (better) {
        best = i;
        best_sig = sig;
        best_size = next.size();
        best_union = std::move(next);
      }
      if (config.budget && tested >= patience && best_sig < base_sig) break;
    }
    if (!best) {
      res.stop_reason = "candidates exhausted";
      break;
    }
    const bool improves = best_sig < base_sig || (best_sig == base_sig && best_size < base.size());
    if (!improves) {
      res.stop_reason = "stall";
      break;
    }
    used[*best] = true;
    phi = config.max_dim_only ? intersect_unions(phi, candidates[*best].omega) : std::move(best_union);
    res.steps.push_back({candidates[*best].family, phi.goodness(), phi.size(), tested});
  }
  res.final_union = phi;
  return res;
}

UnionOfAffine replay(const CycloField& field, const std::vector<WiggleFamily>& families,
                     std::vector<GoodnessSignature>* trace) {
  if (families.empty()) throw InvalidFamily("replay: no families");
  UnionOfAffine phi;
  bool first = true;
  for (const auto& f : families) {
    const auto omega = omega_set(field, f);
    phi = first ? omega : intersect_unions(phi, omega);
    first = false;
    if (trace) trace->push_back(phi.goodness());
  }
  return phi;
}

}  // namespace owf
