#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "runlaw/error.hpp"
#include "runlaw/rational.hpp"

namespace runlaw {

template <class C>
class Poly;

template <class T>
struct is_poly : std::false_type {};
template <class C>
struct is_poly<Poly<C>> : std::true_type {};

/// S can scale a Poly<C> coefficient-wise: S is C itself, or a scalar of C's
/// own coefficient ring, down to integers and Rational at the bottom.
template <class S, class C>
struct is_scalar_for : std::bool_constant<std::same_as<S, C> || std::same_as<S, Rational> || std::same_as<S, Integer> ||
                                          std::is_integral_v<S>> {};
template <class S, class D>
struct is_scalar_for<S, Poly<D>> : std::bool_constant<std::same_as<S, Poly<D>> || is_scalar_for<S, D>::value> {};

// Coefficient-ring hooks for the base field.
inline Rational divide_exact(const Rational& a, const Rational& b) {
  if (is_zero(b)) throw Error("polyalg", "division by zero");
  return a / b;
}

inline Rational unit_inverse(const Rational& c) {
  if (is_zero(c)) throw Error("polyalg", "zero is not invertible");
  return 1 / c;
}

/// Dense univariate polynomial over an exact coefficient ring C.
///
/// C is either Rational or another Poly, which gives the nested
/// representation used for marker variables: Poly<Poly<Rational>> is a
/// polynomial in an outer variable whose coefficients lie in Q[w].
/// Coefficients are indexed by degree; trailing zeros are always trimmed, so
/// the zero polynomial has no coefficients and degree -1.
template <class C>
class Poly {
 public:
  using coeff_type = C;

  Poly() = default;
  explicit Poly(long constant) : Poly(C(constant)) {}
  explicit Poly(C constant) {
    coeffs_.push_back(std::move(constant));
    trim();
  }
  explicit Poly(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<C> coeffs) : coeffs_(coeffs) { trim(); }

  static Poly monomial(C coeff, std::size_t degree) {
    std::vector<C> c(degree + 1);
    c[degree] = std::move(coeff);
    return Poly(std::move(c));
  }
  static Poly variable() { return monomial(C(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<C>& coeffs() const { return coeffs_; }

  /// Coefficient of x^i; zero past the degree.
  C coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : C(); }
  const C& leading() const {
    if (coeffs_.empty()) throw Error("polyalg", "zero polynomial has no leading coefficient");
    return coeffs_.back();
  }
  bool is_constant() const { return coeffs_.size() <= 1; }

  /// Lowest degree with a nonzero coefficient (the z-adic valuation).
  std::size_t valuation() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!runlaw_is_zero(coeffs_[i])) return i;
    return 0;
  }

  Poly operator-() const {
    Poly out(*this);
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  Poly& operator+=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<C> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (runlaw_is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(out));
  }

  // Scalar multiplication by anything a coefficient can be multiplied by:
  // C itself, Rational, or an integer.
  template <class S>
    requires(!std::same_as<S, Poly> && is_scalar_for<S, C>::value)
  friend Poly operator*(const Poly& p, const S& s) {
    std::vector<C> out;
    out.reserve(p.coeffs_.size());
    for (const auto& c : p.coeffs_) out.push_back(C(c * s));
    return Poly(std::move(out));
  }
  template <class S>
    requires(!std::same_as<S, Poly> && is_scalar_for<S, C>::value)
  friend Poly operator*(const S& s, const Poly& p) {
    return p * s;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  Poly pow(std::size_t exponent) const {
    Poly out(1L);
    for (std::size_t i = 0; i < exponent; ++i) out *= *this;
    return out;
  }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<C> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = C(coeffs_[i] * static_cast<long>(i));
    return Poly(std::move(out));
  }

  /// Horner evaluation at a value of the base field; yields a coefficient.
  C eval(const Rational& x) const {
    C acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = C(acc * x);
      acc += *it;
    }
    return acc;
  }

  /// Evaluation at a ring element of the coefficient type (Horner).
  C eval_at(const C& x) const {
    C acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = C(acc * x);
      acc += *it;
    }
    return acc;
  }

  /// Applies f to every coefficient, producing a polynomial over another ring.
  template <class F>
  auto map(F&& f) const {
    using D = std::remove_cvref_t<decltype(f(std::declval<const C&>()))>;
    std::vector<D> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return Poly<D>(std::move(out));
  }

  /// Truncation to degrees < n.
  Poly truncated(std::size_t n) const {
    if (n >= coeffs_.size()) return *this;
    return Poly(std::vector<C>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(n)));
  }

 private:
  template <class T>
  static bool runlaw_is_zero(const T& c) {
    if constexpr (is_poly<T>::value) {
      return c.is_zero();
    } else {
      return sgn(c) == 0;
    }
  }

  void trim() {
    while (!coeffs_.empty() && runlaw_is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<C> coeffs_;
};

template <class C>
bool is_zero(const Poly<C>& p) {
  return p.is_zero();
}

/// Exact quotient a/b in C[x]; throws when b does not divide a. Valid over any
/// integral domain C whose own exact division is available, so it recurses
/// through nested polynomial rings.
template <class C>
Poly<C> divide_exact(const Poly<C>& a, const Poly<C>& b) {
  if (b.is_zero()) throw Error("polyalg", "division by the zero polynomial");
  if (a.is_zero()) return Poly<C>();
  if (a.degree() < b.degree()) throw Error("polyalg", "inexact polynomial division");
  std::vector<C> rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<C> quot(rem.size() - db);
  const C& lead = b.leading();
  for (std::size_t k = quot.size(); k-- > 0;) {
    const C& top = rem[k + db];
    if (is_zero(top)) continue;
    C q = divide_exact(top, lead);
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs()[j];
    quot[k] = std::move(q);
  }
  for (const auto& r : rem)
    if (!is_zero(r)) throw Error("polyalg", "inexact polynomial division");
  return Poly<C>(std::move(quot));
}

/// Multiplicative inverse of a unit: a nonzero constant of the base field,
/// possibly nested inside constant polynomials.
template <class C>
Poly<C> unit_inverse(const Poly<C>& p) {
  if (!p.is_constant() || p.is_zero()) throw Error("polyalg", "element is not a unit");
  return Poly<C>(unit_inverse(p.coeffs()[0]));
}

template <class C>
Poly<Poly<C>> lift(const Poly<C>& p) {
  return p.map([](const C& c) { return Poly<C>(c); });
}

using QPoly = Poly<Rational>;

/// Quotient and remainder over the field Q.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

/// Monic greatest common divisor; gcd(0, 0) is 0.
QPoly gcd(const QPoly& a, const QPoly& b);

QPoly monic(const QPoly& p);

std::string to_string(const QPoly& p, char var = 'z');

inline std::ostream& operator<<(std::ostream& os, const QPoly& p) { return os << to_string(p); }

/// (a z)^e for a rational a.
QPoly scaled_power(const Rational& a, std::size_t exponent);

}  // namespace runlaw
