#include "runlaw/ratfun.hpp"

namespace runlaw {

RatFun RatFun::normalize(QPoly num, QPoly den) {
  if (den.is_zero()) throw Error("polyalg", "zero denominator");
  if (num.is_zero()) return RatFun();
  const QPoly g = gcd(num, den);
  if (g.degree() > 0) {
    num = divmod(num, g).first;
    den = divmod(den, g).first;
  }
  const Rational scale = 1 / den.leading();
  return RatFun(num * scale, den * scale, 0);
}

RatFun RatFun::operator-() const { return RatFun(-num_, den_, 0); }

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.den_ == b.den_) return RatFun::normalize(a.num_ + b.num_, a.den_);
  return RatFun::normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  return RatFun::normalize(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw Error("polyalg", "division by the zero rational function");
  return RatFun::normalize(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun RatFun::pow(std::size_t exponent) const {
  // Powers of coprime polynomials stay coprime; only the monic scaling moves.
  return RatFun(num_.pow(exponent), den_.pow(exponent), 0);
}

Rational RatFun::eval(const Rational& z0) const {
  const Rational d = den_.eval(z0);
  if (runlaw::is_zero(d)) throw Error("polyalg", "pole at z = " + to_string(z0));
  return num_.eval(z0) / d;
}

RatFun RatFun::derivative() const {
  return normalize(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::vector<Rational> RatFun::series(std::size_t n_max) const { return series_coeffs(num_, den_, n_max); }

std::string to_string(const RatFun& f, char var) {
  if (f.den() == QPoly(1L)) return to_string(f.num(), var);
  return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

}  // namespace runlaw
