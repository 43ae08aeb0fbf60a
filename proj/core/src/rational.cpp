#include "runlaw/rational.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "runlaw/error.hpp"

namespace runlaw {
namespace {

Integer pow10(long exponent) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational parse_decimal(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Rational { throw Error("rational", "malformed number '" + original + "'"); };

  text = trim(text);
  if (text.empty()) return fail();

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  std::size_t i = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return fail();

  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail();
    const std::string exp_text(text.substr(i + 1));
    if (exp_text.empty()) return fail();
    char* end = nullptr;
    exponent = std::strtol(exp_text.c_str(), &end, 10);
    if (end == exp_text.c_str() || *end != '\0') return fail();
    if (exponent > 100000 || exponent < -100000) return fail();
  }

  Integer num(digits, 10);
  if (negative) num = -num;
  const long shift = exponent - scale;
  Rational out;
  if (shift >= 0) {
    out = Rational(num * pow10(shift));
  } else {
    out = Rational(num, pow10(-shift));
    out.canonicalize();
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (is_zero(den)) throw Error("rational", "zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational pow(const Rational& base, std::size_t exponent) {
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

namespace {

// Rounds a non-negative rational to the nearest integer, ties to even.
Integer round_half_even(const Rational& value) {
  Integer floor_value;
  mpz_fdiv_q(floor_value.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  const Rational remainder = value - Rational(floor_value);
  const int cmp_half = cmp(remainder, Rational(1, 2));
  if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(floor_value.get_mpz_t()))) ++floor_value;
  return floor_value;
}

}  // namespace

std::string format_scientific(const Rational& q, int digits) {
  if (digits < 1) throw Error("rational", "digits must be positive");
  if (is_zero(q)) return "0";

  const Rational magnitude = abs(q);
  const long num_digits = static_cast<long>(mpz_sizeinbase(magnitude.get_num_mpz_t(), 10));
  const long den_digits = static_cast<long>(mpz_sizeinbase(magnitude.get_den_mpz_t(), 10));
  long exponent = num_digits - den_digits;

  auto power = [](long e) {
    return e >= 0 ? Rational(pow10(e)) : Rational(Integer(1), pow10(-e));
  };
  // Settle 10^exponent <= magnitude < 10^(exponent+1).
  while (magnitude < power(exponent)) --exponent;
  while (magnitude >= power(exponent + 1)) ++exponent;

  Integer mantissa = round_half_even(magnitude * power(digits - 1 - exponent));
  if (mantissa == pow10(digits)) {
    mantissa /= 10;
    ++exponent;
  }

  std::string text = mantissa.get_str(10);
  if (digits > 1) text.insert(1, ".");
  char exp_buf[32];
  std::snprintf(exp_buf, sizeof exp_buf, "e%c%02ld", exponent < 0 ? '-' : '+',
                exponent < 0 ? -exponent : exponent);
  return (sgn(q) < 0 ? "-" : "") + text + exp_buf;
}

std::string format_fixed(const Rational& q, int decimals) {
  if (decimals < 0) throw Error("rational", "decimals must be non-negative");
  const Integer scaled = round_half_even(abs(q) * Rational(pow10(decimals)));
  std::string text = scaled.get_str(10);
  if (decimals > 0) {
    if (text.size() <= static_cast<std::size_t>(decimals))
      text.insert(0, static_cast<std::size_t>(decimals) + 1 - text.size(), '0');
    text.insert(text.size() - static_cast<std::size_t>(decimals), ".");
  }
  return (sgn(q) < 0 && scaled != 0 ? "-" : "") + text;
}

}  // namespace runlaw
