#pragma once

#include <cstddef>
#include <vector>

#include "runlaw/pattern.hpp"

namespace runlaw {

/// Exact distribution of the occurrence count X at sequence length n.
/// probs[s] = P(X = s) for s = 0..floor(n / min_length); entries past the
/// last reachable count are present and zero.
struct PmfTable {
  std::size_t n = 0;
  std::vector<Rational> probs;

  std::size_t s_max() const { return probs.empty() ? 0 : probs.size() - 1; }
  Rational at(std::size_t s) const { return s < probs.size() ? probs[s] : Rational(0); }
  Rational total() const;
  /// P(X >= s).
  Rational tail(std::size_t s) const;
  friend bool operator==(const PmfTable&, const PmfTable&) = default;
};

/// Coefficient of z^n in the series of Phi(w, z), read off in powers of w.
PmfTable pmf(const RunPattern& pat, std::size_t n);

/// pmf for every length 0..n_max from one series expansion.
std::vector<PmfTable> pmf_series(const RunPattern& pat, std::size_t n_max);

/// Linear recursion on the pmf itself using every coefficient of Q and R:
///   sum_j q_j p_{n-j}(s) = sum_j r_j (p_{n-j}(s-1) - p_{n-j}(s)) + [z^n]P [s = 0].
std::vector<PmfTable> pmf_recursive_series(const RunPattern& pat, std::size_t n_max);
PmfTable pmf_recursive(const RunPattern& pat, std::size_t n);

/// The truncated two-term recursion that keeps only prod p_i^{l_i} at lag l
/// and -prod p_i^{k_i+1} at lag k+m (k = sum of upper bounds). It agrees with
/// pmf only when at most one upper bound is finite and the sign of the lag
/// k+m term matches (-1)^m; kept to pin that restriction in tests. Unbounded
/// upper bounds drop the second term.
PmfTable pmf_two_term_recursion(const RunPattern& pat, std::size_t n);

/// E[X^r] from the exact pmf; r = 0 gives 1.
Rational moment(const RunPattern& pat, std::size_t n, std::size_t r);
Rational moment(const PmfTable& table, std::size_t r);

/// E[X^r] from the moment recursion derived from the full expansion
///   sum_j q_j mu_{n-j,r} = sum_j r_j sum_{u<r} C(r,u) mu_{n-j,u}   (r >= 1),
/// with mu_{n,0} = 1 for n >= 0 and every moment zero at negative lengths.
Rational moment_recursive(const RunPattern& pat, std::size_t n, std::size_t r);

/// alpha_0 = 1, alpha_1..alpha_{m-2}: coefficients of prod_{i=2}^{m-1}(1 - p_i z).
std::vector<Rational> alpha_coeffs(const RunPattern& pat);

}  // namespace runlaw
