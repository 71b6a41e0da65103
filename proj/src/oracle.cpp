#include "owf/oracle.hpp"

#include "owf/clock_shift.hpp"
#include "owf/poly_eval.hpp"

#include <random>

namespace owf {

namespace {

// Small random element of Q(omega_d): integer-over-small-denominator coordinates.
CycloNum random_element(const CycloField& field, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  std::vector<Rational> cs;
  for (long i = 0; i < field.degree(); ++i) cs.emplace_back(num(rng), den(rng));
  return field.from_poly(UniPoly(cs));
}

}  // namespace

OracleResult run_oracle(long d, std::size_t product_trials, std::size_t evaluation_trials, std::uint64_t seed) {
  const auto& field = CycloField::of(d);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> idx(0, d - 1);
  auto unit = [&] { return BasisUnitary(idx(rng), idx(rng), d); };
  OracleResult res;

  for (std::size_t t = 0; t < product_trials; ++t) {
    const auto a = unit();
    const auto b = unit();
    const auto sym = unit_product(a, b, field);
    const auto dense = realize(a, field) * realize(b, field);
    ++res.product_checks;
    if (!(realize(sym.unit, field) * sym.coeff == dense)) {
      res.ok = false;
      res.counterexample = "d=" + std::to_string(d) + ": " + a.to_string() + " * " + b.to_string() +
                           " symbolic " + sym.coeff.to_string() + " " + sym.unit.to_string();
      return res;
    }
  }

  const auto& cubic = MultilinearCubic::normalized();
  for (std::size_t t = 0; t < evaluation_trials; ++t) {
    const std::array<BasisUnitary, 3> triple{unit(), unit(), unit()};
    ParamPoint<CycloNum> point;
    for (auto& x : point) x = random_element(field, rng);
    std::array<CycloNum, 6> coeffs;
    for (std::size_t w = 0; w < 6; ++w) {
      const auto& form = cubic.coefficients[w];
      CycloNum v = field.from_rational(form.constant);
      for (std::size_t i = 0; i < 4; ++i) v += point[i] * form.linear[i];
      coeffs[w] = v;
    }
    const auto sym = evaluate_at_point(field, triple, point);
    const auto dense = evaluate_dense(coeffs, {realize(triple[0], field), realize(triple[1], field),
                                               realize(triple[2], field)});
    ++res.evaluation_checks;
    if (!(realize(sym.unit, field) * sym.coeff == dense)) {
      res.ok = false;
      res.counterexample = "d=" + std::to_string(d) + ": f(" + triple[0].to_string() + ", " + triple[1].to_string() +
                           ", " + triple[2].to_string() + ") symbolic " + sym.coeff.to_string() + " " +
                           sym.unit.to_string();
      return res;
    }
  }
  return res;
}

}  // namespace owf
