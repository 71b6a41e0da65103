#pragma once
// Shared helpers for the unit suites.

#include "owf/cyclotomic.hpp"
#include "owf/poly_eval.hpp"

#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <sys/wait.h>

namespace owf::test {

inline Rational small_rational(std::mt19937_64& rng, long span = 9) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, span);
  return Rational(num(rng), den(rng));
}

inline CycloNum random_cyclo(const CycloField& f, std::mt19937_64& rng, long span = 9) {
  std::vector<Rational> cs;
  for (long i = 0; i < f.degree(); ++i) cs.push_back(small_rational(rng, span));
  return f.from_poly(UniPoly(cs));
}

inline CycloNum random_nonzero(const CycloField& f, std::mt19937_64& rng) {
  for (;;) {
    auto x = random_cyclo(f, rng);
    if (!x.is_zero()) return x;
  }
}

inline ParamPoint<CycloNum> random_point(const CycloField& f, std::mt19937_64& rng) {
  ParamPoint<CycloNum> p;
  for (auto& x : p) x = random_cyclo(f, rng, 4);
  return p;
}

struct CliRun {
  int exit_code = -1;
  bool signaled = false;
  std::string out;
};

// Runs the owf binary with `args`; stdout and stderr are merged.
inline CliRun run_cli(const std::string& args) {
  CliRun r;
  const std::string cmd = std::string(OWF_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.signaled = WIFSIGNALED(status);
  return r;
}

inline std::string data_path(const std::string& rel) { return std::string(OWF_TEST_DATA) + "/" + rel; }

}  // namespace owf::test
