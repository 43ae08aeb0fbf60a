#include "runlaw/poly.hpp"

#include <sstream>

namespace runlaw {

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error("polyalg", "division by the zero polynomial");
  if (a.degree() < b.degree()) return {QPoly(), a};
  std::vector<Rational> rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Rational> quot(rem.size() - db);
  const Rational inv_lead = 1 / b.leading();
  for (std::size_t k = quot.size(); k-- > 0;) {
    Rational q = rem[k + db] * inv_lead;
    if (is_zero(q)) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs()[j];
    quot[k] = std::move(q);
  }
  rem.resize(db);
  return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

QPoly monic(const QPoly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading());
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a;
  QPoly y = b;
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).second;
    x = std::move(y);
    // Keeping the remainder monic holds coefficient growth down.
    y = monic(r);
  }
  return monic(x);
}

std::string to_string(const QPoly& p, char var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Rational& c = p.coeffs()[i];
    if (is_zero(c)) continue;
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    const Rational mag = abs(c);
    if (i == 0 || mag != 1) {
      os << to_string(mag);
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

QPoly scaled_power(const Rational& a, std::size_t exponent) {
  return QPoly::monomial(pow(a, exponent), exponent);
}

}  // namespace runlaw
