#include "owf/laurent.hpp"

#include <sstream>

namespace owf {

LaurentPoly::LaurentPoly(UniPoly poly, long low) : poly_(std::move(poly)), low_(low) { normalize(); }

void LaurentPoly::normalize() {
  if (poly_.is_zero()) {
    low_ = 0;
    return;
  }
  const auto& c = poly_.coefficients();
  std::size_t z = 0;
  while (c[z].is_zero()) ++z;
  if (z == 0) return;
  poly_ = UniPoly(std::vector<Rational>(c.begin() + static_cast<long>(z), c.end()));
  low_ += static_cast<long>(z);
}

UniPoly LaurentPoly::times_omega_power(long k) const {
  if (is_zero()) return {};
  const long e = low_ + k;
  if (e < 0) throw std::invalid_argument("LaurentPoly: negative exponent remains after shift");
  return poly_.shifted(static_cast<std::size_t>(e));
}

CycloNum LaurentPoly::in_field(const CycloField& field) const {
  if (is_zero()) return field.zero();
  return field.from_poly(poly_) * field.omega_power(low_);
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  if (low_ >= 0) return poly_.shifted(static_cast<std::size_t>(low_)).to_string("w");
  std::ostringstream os;
  os << "w^" << low_ << "*(" << poly_.to_string("w") << ")";
  return os.str();
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const long low = std::min(low_, o.low_);
  UniPoly sum = poly_.shifted(static_cast<std::size_t>(low_ - low)) +
                o.poly_.shifted(static_cast<std::size_t>(o.low_ - low));
  *this = LaurentPoly(std::move(sum), low);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  poly_ *= c;
  normalize();
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return {a.poly_ * b.poly_, a.low_ + b.low_};
}

}  // namespace owf
