#include "runlaw/exactdist.hpp"

namespace runlaw {
namespace {

std::size_t table_size(const RunPattern& pat, std::size_t n) { return n / pat.min_length() + 1; }

Rational binomial(std::size_t n, std::size_t k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

}  // namespace

Rational PmfTable::total() const {
  Rational sum;
  for (const auto& p : probs) sum += p;
  return sum;
}

Rational PmfTable::tail(std::size_t s) const {
  Rational sum;
  for (std::size_t i = s; i < probs.size(); ++i) sum += probs[i];
  return sum;
}

std::vector<PmfTable> pmf_series(const RunPattern& pat, std::size_t n_max) {
  const DoubleGF phi = core_polys(pat);
  const std::vector<QPoly> coeffs = series_coeffs(phi.numerator(), phi.denominator(), n_max);
  std::vector<PmfTable> out;
  out.reserve(coeffs.size());
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    PmfTable t{n, std::vector<Rational>(table_size(pat, n))};
    if (coeffs[n].size() > t.probs.size())
      throw Error("exactdist", "occurrence count exceeds floor(n / l) at n = " + std::to_string(n));
    for (std::size_t s = 0; s < coeffs[n].size(); ++s) t.probs[s] = coeffs[n].coeffs()[s];
    out.push_back(std::move(t));
  }
  return out;
}

PmfTable pmf(const RunPattern& pat, std::size_t n) { return std::move(pmf_series(pat, n).back()); }

std::vector<PmfTable> pmf_recursive_series(const RunPattern& pat, std::size_t n_max) {
  const DoubleGF phi = core_polys(pat);
  const auto& q = phi.Q.coeffs();
  const auto& r = phi.R.coeffs();
  std::vector<PmfTable> tables;
  tables.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    PmfTable t{n, std::vector<Rational>(table_size(pat, n))};
    for (std::size_t s = 0; s < t.probs.size(); ++s) {
      Rational v = s == 0 ? phi.P.coeff(n) : Rational(0);
      for (std::size_t j = 1; j < q.size() && j <= n; ++j) v -= q[j] * tables[n - j].at(s);
      // r_0 = 0 because every lower bound is at least 1.
      for (std::size_t j = 1; j < r.size() && j <= n; ++j) {
        if (is_zero(r[j])) continue;
        const PmfTable& prev = tables[n - j];
        v += r[j] * (s > 0 ? Rational(prev.at(s - 1) - prev.at(s)) : Rational(-prev.at(s)));
      }
      t.probs[s] = std::move(v);
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

PmfTable pmf_recursive(const RunPattern& pat, std::size_t n) { return std::move(pmf_recursive_series(pat, n).back()); }

std::vector<Rational> alpha_coeffs(const RunPattern& pat) {
  std::vector<Rational> alpha = core_polys(pat).P.coeffs();
  alpha.resize(pat.m() - 1);  // zero-padded when some p_i vanish
  return alpha;
}

PmfTable pmf_two_term_recursion(const RunPattern& pat, std::size_t n) {
  const std::size_t m = pat.m();
  const std::size_t ell = pat.min_length();
  const std::vector<Rational> alpha = alpha_coeffs(pat);

  Rational lower_product(1);
  for (std::size_t i = 0; i < m; ++i) lower_product *= pow(pat.prob(i), pat.bound(i).lower);
  Rational upper_product;
  std::size_t upper_lag = 0;
  if (const auto k = pat.max_length()) {
    upper_product = 1;
    for (std::size_t i = 0; i < m; ++i) upper_product *= pow(pat.prob(i), *pat.bound(i).upper + 1);
    upper_lag = *k + m;
  }

  // Left-hand coefficients: 1, alpha_j - alpha_{j-1} (j = 1..m-2), -alpha_{m-2}.
  std::vector<Rational> lhs(m);
  lhs[0] = 1;
  for (std::size_t j = 1; j + 1 < m; ++j) lhs[j] = alpha[j] - alpha[j - 1];
  lhs[m - 1] = -alpha[m - 2];

  std::vector<PmfTable> tables;
  for (std::size_t len = 0; len <= n; ++len) {
    PmfTable t{len, std::vector<Rational>(table_size(pat, len))};
    if (len < ell) {
      t.probs[0] = 1;
      tables.push_back(std::move(t));
      continue;
    }
    auto diff = [&](std::size_t lag, std::size_t s) -> Rational {
      if (lag > len) return Rational(0);
      const PmfTable& prev = tables[len - lag];
      return (s > 0 ? prev.at(s - 1) : Rational(0)) - prev.at(s);
    };
    for (std::size_t s = 0; s < t.probs.size(); ++s) {
      Rational v = lower_product * diff(ell, s);
      if (upper_lag > 0) v -= upper_product * diff(upper_lag, s);
      for (std::size_t j = 1; j < m && j <= len; ++j) v -= lhs[j] * tables[len - j].at(s);
      t.probs[s] = std::move(v);
    }
    tables.push_back(std::move(t));
  }
  return std::move(tables.back());
}

Rational moment(const PmfTable& table, std::size_t r) {
  if (r == 0) return table.total();
  Rational sum;
  for (std::size_t s = 1; s < table.probs.size(); ++s) sum += pow(Rational(static_cast<long>(s)), r) * table.probs[s];
  return sum;
}

Rational moment(const RunPattern& pat, std::size_t n, std::size_t r) { return moment(pmf(pat, n), r); }

Rational moment_recursive(const RunPattern& pat, std::size_t n, std::size_t r) {
  const DoubleGF phi = core_polys(pat);
  const auto& q = phi.Q.coeffs();
  const auto& rc = phi.R.coeffs();
  std::vector<std::vector<Rational>> mu(n + 1, std::vector<Rational>(r + 1));
  for (std::size_t len = 0; len <= n; ++len) {
    mu[len][0] = 1;
    for (std::size_t order = 1; order <= r; ++order) {
      Rational v;
      for (std::size_t j = 1; j < rc.size() && j <= len; ++j) {
        if (is_zero(rc[j])) continue;
        Rational inner;
        for (std::size_t u = 0; u < order; ++u) inner += binomial(order, u) * mu[len - j][u];
        v += rc[j] * inner;
      }
      for (std::size_t j = 1; j < q.size() && j <= len; ++j) v -= q[j] * mu[len - j][order];
      mu[len][order] = std::move(v);
    }
  }
  return mu[n][r];
}

}  // namespace runlaw
