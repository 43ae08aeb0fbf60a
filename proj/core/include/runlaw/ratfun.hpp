#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "runlaw/poly.hpp"

namespace runlaw {

/// Rational function over Q in one variable, held in canonical form:
/// gcd(num, den) = 1 and den monic (zero is 0/1). Two RatFuns are
/// mathematically equal exactly when they compare equal with ==.
class RatFun {
 public:
  RatFun() : den_(1L) {}
  explicit RatFun(QPoly poly) : num_(std::move(poly)), den_(1L) {}
  explicit RatFun(const Rational& constant) : num_(constant), den_(1L) {}

  /// Reduces num/den to canonical form. Throws on a zero denominator.
  static RatFun normalize(QPoly num, QPoly den);

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  friend bool operator==(const RatFun& a, const RatFun& b) = default;

  RatFun pow(std::size_t exponent) const;

  /// Exact value at z0; throws at a pole.
  Rational eval(const Rational& z0) const;

  /// Quotient-rule derivative.
  RatFun derivative() const;

  /// Power-series coefficients c_0..c_{n_max}; requires den(0) != 0.
  std::vector<Rational> series(std::size_t n_max) const;

 private:
  RatFun(QPoly num, QPoly den, int /*already canonical*/) : num_(std::move(num)), den_(std::move(den)) {}

  QPoly num_;
  QPoly den_;
};

inline RatFun rat_normalize(QPoly num, QPoly den) { return RatFun::normalize(std::move(num), std::move(den)); }

/// Equality by cross-multiplication; agrees with == on canonical values.
inline bool rat_equal(const RatFun& a, const RatFun& b) { return a.num() * b.den() == b.num() * a.den(); }

inline RatFun rat_derivative(const RatFun& f) { return f.derivative(); }
inline Rational rat_eval(const RatFun& f, const Rational& z0) { return f.eval(z0); }

std::string to_string(const RatFun& f, char var = 'z');
inline std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << to_string(f); }

/// Coefficients c_0..c_{n_max} of the power series of num/den over any exact
/// coefficient ring, by the linear recurrence
///   den_0 c_n = num_n - sum_{j>=1} den_j c_{n-j}.
/// den(0) must be a unit of the ring.
template <class C>
std::vector<C> series_coeffs(const Poly<C>& num, const Poly<C>& den, std::size_t n_max) {
  if (den.is_zero() || is_zero(den.coeffs()[0]))
    throw Error("polyalg", "denominator vanishes at 0; not a power series");
  const C inverse = unit_inverse(den.coeffs()[0]);
  const bool unit_leading = inverse == C(1);
  const auto& d = den.coeffs();
  std::vector<C> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    C acc = num.coeff(n);
    const std::size_t jmax = std::min(n, d.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j) {
      if (is_zero(d[j])) continue;
      acc -= d[j] * out[n - j];
    }
    if (!unit_leading) acc = C(acc * inverse);
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace runlaw
