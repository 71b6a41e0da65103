#pragma once

#include <cstdint>
#include <string>

namespace owf {

struct OracleResult {
  bool ok = true;
  std::size_t product_checks = 0;
  std::size_t evaluation_checks = 0;
  /// First mismatch, empty when ok.
  std::string counterexample;
};

/// Randomized symbolic-vs-dense equivalence: unit products against matrix
/// products of y^q v^p, and full evaluations of f against dense evaluation,
/// both with exact equality in Q(omega_d).
OracleResult run_oracle(long d, std::size_t product_trials, std::size_t evaluation_trials, std::uint64_t seed);

}  // namespace owf
