#pragma once

#include <cstddef>
#include <vector>

#include "runlaw/exactdist.hpp"
#include "runlaw/pattern.hpp"
#include "runlaw/ratfun.hpp"

namespace runlaw {

/// pgf of T_r, the waiting time until the r-th occurrence:
///   psi_r(z) = (R / (Q + R))^r,
/// the law with survival P(T_r > n) = P(X_n < r).
struct WaitingPgf {
  std::size_t r = 1;
  RatFun psi;
};

/// Throws Error("waiting", ...) when r = 0 or the pattern cannot occur
/// (some p_i = 0, so R(1) = 0).
WaitingPgf psi(const RunPattern& pat, std::size_t r);

/// h_r(0..horizon) = coefficients of psi_r; zero below r * min_length.
std::vector<Rational> waiting_pmf(const RunPattern& pat, std::size_t r, std::size_t horizon);

/// Same table from the convolution recursion (Q + R) * H_r = R * H_{r-1},
/// H_0 = 1, i.e.
///   sum_j (q_j + r_j) h_r(s - j) = sum_j r_j h_{r-1}(s - j).
std::vector<Rational> waiting_pmf_recursive(const RunPattern& pat, std::size_t r, std::size_t horizon);

struct WaitingMoments {
  Rational mean;
  Rational variance;
};

/// mean = psi_r'(1), variance = psi_r''(1) + mean - mean^2.
WaitingMoments waiting_moments(const RunPattern& pat, std::size_t r);

struct SurvivalCheck {
  Rational lhs;  // 1 - sum_{s<=n} h_r(s)
  Rational rhs;  // sum_{s<r} P(X_n = s)
  bool equal = false;
};

SurvivalCheck survival_check(const RunPattern& pat, std::size_t r, std::size_t n);

struct HorizonChoice {
  std::size_t horizon = 0;
  bool reached = false;  // cumulative mass >= 1 - tolerance within the cap
};

/// Smallest horizon whose cumulative waiting mass reaches 1 - tolerance,
/// located with a double-precision run of the recursion and capped at
/// max_horizon.
HorizonChoice default_horizon(const RunPattern& pat, std::size_t r, double tolerance = 1e-12,
                              std::size_t max_horizon = 5000);

}  // namespace runlaw
