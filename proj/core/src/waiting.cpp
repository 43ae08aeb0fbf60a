#include "runlaw/waiting.hpp"

namespace runlaw {
namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("waiting", message); }

void require_realizable(const DoubleGF& phi) {
  if (sgn(phi.R.eval(Rational(1))) <= 0) fail("pattern is not realizable: some symbol has probability 0");
}

}  // namespace

WaitingPgf psi(const RunPattern& pat, std::size_t r) {
  if (r == 0) fail("occurrence index r must be at least 1");
  const DoubleGF phi = core_polys(pat);
  require_realizable(phi);
  const QPoly den = phi.Q + phi.R;
  QPoly num_r = phi.R;
  QPoly den_r = den;
  for (std::size_t i = 1; i < r; ++i) {
    num_r *= phi.R;
    den_r *= den;
  }
  return WaitingPgf{r, RatFun::normalize(std::move(num_r), std::move(den_r))};
}

std::vector<Rational> waiting_pmf(const RunPattern& pat, std::size_t r, std::size_t horizon) {
  return psi(pat, r).psi.series(horizon);
}

std::vector<Rational> waiting_pmf_recursive(const RunPattern& pat, std::size_t r, std::size_t horizon) {
  if (r == 0) fail("occurrence index r must be at least 1");
  const DoubleGF phi = core_polys(pat);
  require_realizable(phi);
  const QPoly den = phi.Q + phi.R;
  const auto& d = den.coeffs();
  const auto& rc = phi.R.coeffs();

  std::vector<Rational> prev(horizon + 1);
  prev[0] = 1;  // h_0 = delta_0
  std::vector<Rational> cur(horizon + 1);
  for (std::size_t level = 1; level <= r; ++level) {
    for (std::size_t s = 0; s <= horizon; ++s) {
      Rational v;
      for (std::size_t j = 1; j < rc.size() && j <= s; ++j)
        if (!is_zero(rc[j])) v += rc[j] * prev[s - j];
      for (std::size_t j = 1; j < d.size() && j <= s; ++j)
        if (!is_zero(d[j])) v -= d[j] * cur[s - j];
      cur[s] = std::move(v);  // d_0 = 1
    }
    std::swap(prev, cur);
  }
  return prev;
}

WaitingMoments waiting_moments(const RunPattern& pat, std::size_t r) {
  const RatFun f = psi(pat, r).psi;
  const RatFun d1 = f.derivative();
  const RatFun d2 = d1.derivative();
  const Rational one(1);
  if (is_zero(f.den().eval(one))) fail("pgf has a pole at z = 1");
  WaitingMoments out;
  out.mean = d1.eval(one);
  out.variance = d2.eval(one) + out.mean - out.mean * out.mean;
  return out;
}

SurvivalCheck survival_check(const RunPattern& pat, std::size_t r, std::size_t n) {
  const std::vector<Rational> h = waiting_pmf(pat, r, n);
  SurvivalCheck out;
  out.lhs = 1;
  for (const auto& v : h) out.lhs -= v;
  const PmfTable t = pmf(pat, n);
  for (std::size_t s = 0; s < r && s < t.probs.size(); ++s) out.rhs += t.probs[s];
  out.equal = out.lhs == out.rhs;
  return out;
}

HorizonChoice default_horizon(const RunPattern& pat, std::size_t r, double tolerance, std::size_t max_horizon) {
  if (r == 0) fail("occurrence index r must be at least 1");
  const DoubleGF phi = core_polys(pat);
  require_realizable(phi);
  const QPoly den = phi.Q + phi.R;
  std::vector<double> d;
  std::vector<double> rc;
  for (const auto& c : den.coeffs()) d.push_back(c.get_d());
  for (const auto& c : phi.R.coeffs()) rc.push_back(c.get_d());

  // One row per occurrence level, grown together so the scan can stop early.
  std::vector<std::vector<double>> h(r + 1);
  h[0].push_back(1.0);
  double cumulative = 0.0;
  for (std::size_t s = 0; s <= max_horizon; ++s) {
    if (s > 0) h[0].push_back(0.0);
    for (std::size_t level = 1; level <= r; ++level) {
      double v = 0.0;
      for (std::size_t j = 1; j < rc.size() && j <= s; ++j) v += rc[j] * h[level - 1][s - j];
      for (std::size_t j = 1; j < d.size() && j <= s; ++j) v -= d[j] * h[level][s - j];
      h[level].push_back(v);
    }
    cumulative += h[r][s];
    if (cumulative >= 1.0 - tolerance) return {s, true};
  }
  return {max_horizon, false};
}

}  // namespace runlaw
