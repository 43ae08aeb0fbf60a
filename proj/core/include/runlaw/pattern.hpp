#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "runlaw/poly.hpp"
#include "runlaw/ratfun.hpp"

namespace runlaw {

/// Run-length window [lower, upper] for one symbol. An empty upper means the
/// run may be arbitrarily long.
struct SymbolBound {
  std::size_t lower = 1;
  std::optional<std::size_t> upper;

  bool bounded() const { return upper.has_value(); }
  bool admits(std::size_t length) const { return length >= lower && (!upper || length <= *upper); }
  friend bool operator==(const SymbolBound&, const SymbolBound&) = default;
};

enum class BoundMode { AtLeast, Exactly, AtMost, Between };

SymbolBound at_least(std::size_t lower);
SymbolBound exactly(std::size_t length);
SymbolBound at_most(std::size_t upper);
SymbolBound between(std::size_t lower, std::size_t upper);

/// The run pattern "lower_1..upper_1 ones, then lower_2..upper_2 twos, ...,
/// then lower_m..upper_m m's" over i.i.d. trials on {1..m} with P(symbol i)
/// = probs[i-1]. Occurrences are counted on maximal runs: a window of m
/// consecutive maximal runs with symbols 1..m whose lengths satisfy the bounds.
///
/// Symbol indices in this API are 0-based (index i is symbol label i+1).
class RunPattern {
 public:
  /// Throws Error("pattern", ...) unless m >= 2, sizes match, every bound has
  /// 1 <= lower <= upper, every probability is >= 0 and they sum to 1 exactly.
  RunPattern(std::vector<SymbolBound> bounds, std::vector<Rational> probs);

  std::size_t m() const { return bounds_.size(); }
  const std::vector<SymbolBound>& bounds() const { return bounds_; }
  const std::vector<Rational>& probs() const { return probs_; }
  const SymbolBound& bound(std::size_t i) const { return bounds_.at(i); }
  const Rational& prob(std::size_t i) const { return probs_.at(i); }

  /// Sum of the lower bounds: the shortest sequence holding an occurrence.
  std::size_t min_length() const;
  /// Sum of the upper bounds, when all are finite.
  std::optional<std::size_t> max_length() const;
  bool all_bounded() const;

  /// Human-readable notes about degenerate inputs (zero probabilities).
  std::vector<std::string> warnings() const;

  friend bool operator==(const RunPattern&, const RunPattern&) = default;

 private:
  std::vector<SymbolBound> bounds_;
  std::vector<Rational> probs_;
};

/// Per-symbol length request with a mode, mapped to a SymbolBound:
/// AtLeast(a) -> [a, inf), Exactly(a) -> [a, a], AtMost(a) -> [1, a],
/// Between(a, b) -> [a, b].
struct ModeBound {
  BoundMode mode = BoundMode::AtLeast;
  std::size_t first = 1;
  std::size_t second = 0;
};

RunPattern make_pattern(std::span<const ModeBound> bounds, std::vector<Rational> probs);

/// Same mode for every symbol.
RunPattern make_pattern(BoundMode mode, std::span<const std::size_t> lengths, std::vector<Rational> probs);

/// Parses the CLI mini-language: comma-separated items "i:l..k" where k may be
/// "inf"; "i:k" is shorthand for "i:k..k"; the "i:" prefix is optional but
/// when present must equal the item's 1-based position.
std::vector<SymbolBound> parse_pattern_spec(std::string_view text);
std::string format_pattern_spec(std::span<const SymbolBound> bounds);

/// Generating functions of the three block kinds for symbol i: runs shorter
/// than the lower bound, runs longer than the upper bound, and runs inside the
/// window.
struct BlockGfs {
  RatFun below;   // sum_{j=1}^{l-1} (p z)^j
  RatFun above;   // sum_{j>k} (p z)^j, zero when unbounded
  RatFun inside;  // sum_{j=l}^{k} (p z)^j
};

BlockGfs block_gfs(const RunPattern& pat, std::size_t i);

/// r_i(z) = (p_i z)^{l_i} - (p_i z)^{k_i+1}, the second term absent when k_i
/// is unbounded.
QPoly run_factor(const RunPattern& pat, std::size_t i);

/// Phi(w, z) = P(z) / (Q(z) - (w - 1) R(z)), the double generating function
/// whose z^n coefficient is the pgf (in w) of the occurrence count at length n.
struct DoubleGF {
  QPoly P;
  QPoly Q;
  QPoly R;

  /// Numerator and denominator as polynomials in z over Q[w].
  Poly<QPoly> numerator() const;
  Poly<QPoly> denominator() const;
  /// Phi(w0, z) as a rational function of z.
  RatFun at(const Rational& w0) const;
};

DoubleGF core_polys(const RunPattern& pat);

/// Generating functions over z of sequences on the first `prefix` symbols
/// (alphabet mass S = p_1 + ... + p_prefix) that end with the truncated
/// pattern at the right boundary (Y) and of the other nonempty sequences (N):
///   Y = prod_{i<=prefix} r_i / ((1 - S z) prod_{i=2}^{prefix} (1 - p_i z)),
///   N = S z / (1 - S z) - Y.
struct RightEndGfs {
  RatFun Y;
  RatFun N;
};

RightEndGfs right_end_gfs(const RunPattern& pat, std::size_t prefix);
inline RightEndGfs right_end_gfs(const RunPattern& pat) { return right_end_gfs(pat, pat.m()); }

/// Named special cases; each maps lengths through make_pattern and dispatches
/// to core_polys.
DoubleGF phi_at_least(std::span<const std::size_t> lengths, std::vector<Rational> probs);
DoubleGF phi_exactly(std::span<const std::size_t> lengths, std::vector<Rational> probs);
DoubleGF phi_at_most(std::span<const std::size_t> lengths, std::vector<Rational> probs);
/// First m-1 symbols bounded [lower, upper], the last one at-least.
DoubleGF phi_mixed(std::span<const SymbolBound> leading, std::size_t last_lower, std::vector<Rational> probs);

}  // namespace runlaw
