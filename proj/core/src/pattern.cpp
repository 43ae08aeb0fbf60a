#include "runlaw/pattern.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace runlaw {
namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("pattern", message); }

QPoly one_minus(const Rational& p) { return QPoly{Rational(1), Rational(-p)}; }

}  // namespace

SymbolBound at_least(std::size_t lower) {
  if (lower < 1) fail("run lower bound must be at least 1");
  return SymbolBound{lower, std::nullopt};
}
SymbolBound exactly(std::size_t length) { return between(length, length); }
SymbolBound at_most(std::size_t upper) { return between(1, upper); }
SymbolBound between(std::size_t lower, std::size_t upper) {
  if (lower < 1) fail("run lower bound must be at least 1");
  if (upper < lower) fail("run upper bound " + std::to_string(upper) + " is below lower bound " + std::to_string(lower));
  return SymbolBound{lower, upper};
}

RunPattern::RunPattern(std::vector<SymbolBound> bounds, std::vector<Rational> probs)
    : bounds_(std::move(bounds)), probs_(std::move(probs)) {
  if (bounds_.size() < 2) fail("a pattern needs at least 2 symbols");
  if (bounds_.size() != probs_.size())
    fail("pattern has " + std::to_string(bounds_.size()) + " symbols but " + std::to_string(probs_.size()) +
         " probabilities were given");
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    const auto& b = bounds_[i];
    if (b.lower < 1) fail("symbol " + std::to_string(i + 1) + ": lower bound must be at least 1");
    if (b.upper && *b.upper < b.lower) fail("symbol " + std::to_string(i + 1) + ": upper bound below lower bound");
  }
  Rational total;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (sgn(probs_[i]) < 0) fail("probability of symbol " + std::to_string(i + 1) + " is negative");
    total += probs_[i];
  }
  if (total != 1) fail("probabilities sum to " + to_string(total) + ", not 1");
}

std::size_t RunPattern::min_length() const {
  std::size_t total = 0;
  for (const auto& b : bounds_) total += b.lower;
  return total;
}

std::optional<std::size_t> RunPattern::max_length() const {
  std::size_t total = 0;
  for (const auto& b : bounds_) {
    if (!b.upper) return std::nullopt;
    total += *b.upper;
  }
  return total;
}

bool RunPattern::all_bounded() const { return max_length().has_value(); }

std::vector<std::string> RunPattern::warnings() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < probs_.size(); ++i)
    if (is_zero(probs_[i]))
      out.push_back("symbol " + std::to_string(i + 1) + " has probability 0; the pattern can never occur");
  return out;
}

RunPattern make_pattern(std::span<const ModeBound> bounds, std::vector<Rational> probs) {
  std::vector<SymbolBound> out;
  out.reserve(bounds.size());
  for (const auto& b : bounds) {
    switch (b.mode) {
      case BoundMode::AtLeast: out.push_back(at_least(b.first)); break;
      case BoundMode::Exactly: out.push_back(exactly(b.first)); break;
      case BoundMode::AtMost: out.push_back(at_most(b.first)); break;
      case BoundMode::Between: out.push_back(between(b.first, b.second)); break;
    }
  }
  return RunPattern(std::move(out), std::move(probs));
}

RunPattern make_pattern(BoundMode mode, std::span<const std::size_t> lengths, std::vector<Rational> probs) {
  if (mode == BoundMode::Between) fail("Between needs two lengths per symbol");
  std::vector<ModeBound> mb;
  for (auto len : lengths) mb.push_back({mode, len, 0});
  return make_pattern(mb, std::move(probs));
}

std::vector<SymbolBound> parse_pattern_spec(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto number = [&](std::string_view s, const std::string& item) -> std::size_t {
    s = trim(s);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      fail("malformed pattern item '" + item + "': expected a positive integer, got '" + std::string(s) + "'");
    return v;
  };

  std::vector<SymbolBound> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    std::string_view item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    const std::string item_str(item);
    if (item.empty()) fail("empty item in pattern '" + std::string(text) + "'");

    const auto colon = item.find(':');
    if (colon != std::string_view::npos) {
      const std::size_t label = number(item.substr(0, colon), item_str);
      if (label != out.size() + 1)
        fail("pattern item '" + item_str + "' has symbol " + std::to_string(label) + " but symbols must appear as 1, 2, ..., m in order");
      item = trim(item.substr(colon + 1));
    }

    const auto dots = item.find("..");
    SymbolBound bound;
    if (dots == std::string_view::npos) {
      bound.lower = number(item, item_str);
      bound.upper = bound.lower;
    } else {
      bound.lower = number(item.substr(0, dots), item_str);
      const std::string_view hi = trim(item.substr(dots + 2));
      if (hi == "inf" || hi == "INF" || hi == "Inf") {
        bound.upper = std::nullopt;
      } else {
        bound.upper = number(hi, item_str);
      }
    }
    if (bound.lower < 1) fail("pattern item '" + item_str + "': lower bound must be at least 1");
    if (bound.upper && *bound.upper < bound.lower) fail("pattern item '" + item_str + "': upper bound below lower bound");
    out.push_back(bound);

    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_pattern_spec(std::span<const SymbolBound> bounds) {
  std::ostringstream os;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (i) os << ',';
    os << i + 1 << ':' << bounds[i].lower << "..";
    if (bounds[i].upper) {
      os << *bounds[i].upper;
    } else {
      os << "inf";
    }
  }
  return os.str();
}

QPoly run_factor(const RunPattern& pat, std::size_t i) {
  const auto& b = pat.bound(i);
  const Rational& p = pat.prob(i);
  QPoly r = scaled_power(p, b.lower);
  if (b.upper) r -= scaled_power(p, *b.upper + 1);
  return r;
}

BlockGfs block_gfs(const RunPattern& pat, std::size_t i) {
  if (i >= pat.m()) fail("symbol index " + std::to_string(i) + " out of range for m = " + std::to_string(pat.m()));
  const auto& b = pat.bound(i);
  const Rational& p = pat.prob(i);
  const QPoly geometric_den = one_minus(p);

  BlockGfs out;
  out.below = RatFun::normalize(scaled_power(p, 1) - scaled_power(p, b.lower), geometric_den);
  if (b.upper) out.above = RatFun::normalize(scaled_power(p, *b.upper + 1), geometric_den);
  out.inside = RatFun::normalize(run_factor(pat, i), geometric_den);
  return out;
}

Poly<QPoly> DoubleGF::numerator() const { return lift(P); }

Poly<QPoly> DoubleGF::denominator() const {
  const std::size_t n = std::max(Q.size(), R.size());
  std::vector<QPoly> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational q = Q.coeff(j);
    const Rational r = R.coeff(j);
    out[j] = QPoly{Rational(q + r), Rational(-r)};
  }
  return Poly<QPoly>(std::move(out));
}

RatFun DoubleGF::at(const Rational& w0) const { return RatFun::normalize(P, Q - R * Rational(w0 - 1)); }

DoubleGF core_polys(const RunPattern& pat) {
  DoubleGF out;
  out.P = QPoly(1L);
  for (std::size_t i = 1; i + 1 < pat.m(); ++i) out.P *= one_minus(pat.prob(i));
  out.Q = one_minus(Rational(1)) * out.P;
  out.R = QPoly(1L);
  for (std::size_t i = 0; i < pat.m(); ++i) out.R *= run_factor(pat, i);
  return out;
}

RightEndGfs right_end_gfs(const RunPattern& pat, std::size_t prefix) {
  if (prefix < 1 || prefix > pat.m()) fail("prefix length " + std::to_string(prefix) + " out of range");
  Rational mass;
  QPoly numerator(1L);
  for (std::size_t i = 0; i < prefix; ++i) {
    mass += pat.prob(i);
    numerator *= run_factor(pat, i);
  }
  QPoly denominator = one_minus(mass);
  for (std::size_t i = 1; i < prefix; ++i) denominator *= one_minus(pat.prob(i));

  RightEndGfs out;
  out.Y = RatFun::normalize(numerator, denominator);
  out.N = RatFun::normalize(QPoly{Rational(0), mass}, one_minus(mass)) - out.Y;
  return out;
}

DoubleGF phi_at_least(std::span<const std::size_t> lengths, std::vector<Rational> probs) {
  return core_polys(make_pattern(BoundMode::AtLeast, lengths, std::move(probs)));
}

DoubleGF phi_exactly(std::span<const std::size_t> lengths, std::vector<Rational> probs) {
  return core_polys(make_pattern(BoundMode::Exactly, lengths, std::move(probs)));
}

DoubleGF phi_at_most(std::span<const std::size_t> lengths, std::vector<Rational> probs) {
  return core_polys(make_pattern(BoundMode::AtMost, lengths, std::move(probs)));
}

DoubleGF phi_mixed(std::span<const SymbolBound> leading, std::size_t last_lower, std::vector<Rational> probs) {
  std::vector<SymbolBound> bounds(leading.begin(), leading.end());
  bounds.push_back(at_least(last_lower));
  return core_polys(RunPattern(std::move(bounds), std::move(probs)));
}

}  // namespace runlaw
