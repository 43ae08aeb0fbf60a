#include "verify.hpp"

#include <exception>

#include "runlaw/exactdist.hpp"
#include "runlaw/oracle.hpp"
#include "runlaw/transfer.hpp"
#include "runlaw/waiting.hpp"

namespace runlaw::cli {
namespace {

std::vector<SymbolBound> bounds_upto(std::size_t max_length) {
  std::vector<SymbolBound> out;
  for (std::size_t l = 1; l <= max_length; ++l) {
    out.push_back(at_least(l));
    for (std::size_t k = l; k <= max_length; ++k) out.push_back(between(l, k));
  }
  return out;
}

class Check {
 public:
  explicit Check(std::string name) { outcome_.name = std::move(name); }

  template <class F>
  void run(const RunPattern& pat, const std::string& where, F&& body) {
    ++outcome_.cases;
    bool ok = false;
    std::string why;
    try {
      ok = body();
    } catch (const std::exception& e) {
      why = std::string(": ") + e.what();
    }
    if (!ok) {
      if (outcome_.failures++ == 0)
        outcome_.first_failure = format_pattern_spec(pat.bounds()) + " " + where + why;
    }
  }

  CheckOutcome done() { return std::move(outcome_); }

 private:
  CheckOutcome outcome_;
};

}  // namespace

GridSpec small_grid() { return {2, 10, false, 7, 2, 12}; }
GridSpec full_grid() { return {3, 14, true, 9, 3, 20}; }

std::vector<RunPattern> grid_patterns_m2(std::size_t max_length) {
  const std::vector<std::vector<Rational>> probs = {
      {Rational(1, 2), Rational(1, 2)}, {Rational(1, 4), Rational(3, 4)}, {Rational(1, 10), Rational(9, 10)}};
  const auto choices = bounds_upto(max_length);
  std::vector<RunPattern> out;
  for (const auto& p : probs)
    for (const auto& b1 : choices)
      for (const auto& b2 : choices) out.emplace_back(std::vector<SymbolBound>{b1, b2}, p);
  return out;
}

std::vector<RunPattern> grid_patterns_m3(bool wide) {
  std::vector<SymbolBound> choices = {at_least(1), exactly(1), exactly(2), at_most(2)};
  std::vector<std::vector<Rational>> probs = {{Rational(1, 2), Rational(1, 3), Rational(1, 6)}};
  if (wide) {
    choices.push_back(at_least(2));
    choices.push_back(between(1, 3));
    probs.push_back({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  }
  std::vector<RunPattern> out;
  for (const auto& p : probs)
    for (const auto& b1 : choices)
      for (const auto& b2 : choices)
        for (const auto& b3 : choices) out.emplace_back(std::vector<SymbolBound>{b1, b2, b3}, p);
  return out;
}

std::vector<CheckOutcome> run_verification(const GridSpec& grid) {
  const auto m2 = grid_patterns_m2(grid.max_length);
  const auto m3 = grid_patterns_m3(grid.wide_m3);
  std::vector<const RunPattern*> all;
  for (const auto& p : m2) all.push_back(&p);
  for (const auto& p : m3) all.push_back(&p);

  std::vector<CheckOutcome> out;

  {
    Check c("pmf equals brute-force enumeration");
    for (const auto* pat : all) {
      const std::size_t n_max = pat->m() == 2 ? grid.n2 : grid.n3;
      const auto series = pmf_series(*pat, n_max);
      for (std::size_t n = 0; n <= n_max; ++n)
        c.run(*pat, "n=" + std::to_string(n), [&] { return series[n] == exact_pmf_bruteforce(*pat, n); });
    }
    out.push_back(c.done());
  }
  {
    Check c("pmf equals full-expansion recursion");
    for (const auto* pat : all) {
      const std::size_t n_max = pat->m() == 2 ? grid.n2 : grid.n3;
      c.run(*pat, "n<=" + std::to_string(n_max),
            [&] { return pmf_series(*pat, n_max) == pmf_recursive_series(*pat, n_max); });
    }
    out.push_back(c.done());
  }
  {
    Check c("moment recursion equals pmf moments");
    for (const auto* pat : all) {
      const std::size_t n = pat->m() == 2 ? grid.n2 : grid.n3;
      const auto table = pmf(*pat, n);
      for (std::size_t r = 0; r <= 3; ++r)
        c.run(*pat, "r=" + std::to_string(r), [&] { return moment(table, r) == moment_recursive(*pat, n, r); });
    }
    out.push_back(c.done());
  }
  {
    Check c("Phi(1,z) = 1/(1-z)");
    const RatFun geometric = RatFun::normalize(QPoly(1L), QPoly{Rational(1), Rational(-1)});
    for (const auto* pat : all) c.run(*pat, "", [&] { return core_polys(*pat).at(Rational(1)) == geometric; });
    out.push_back(c.done());
  }
  {
    Check c("transfer system equals Phi");
    for (const auto* pat : all) c.run(*pat, "", [&] { return matches(phi_by_transfer(*pat), core_polys(*pat)); });
    out.push_back(c.done());
  }
  {
    Check c("transfer chain equals Y and N");
    for (const auto* pat : all) {
      for (std::size_t prefix = 2; prefix <= pat->m(); ++prefix) {
        c.run(*pat, "prefix=" + std::to_string(prefix), [&] {
          const auto a = right_end_by_transfer(*pat, prefix);
          const auto b = right_end_gfs(*pat, prefix);
          return a.Y == b.Y && a.N == b.N;
        });
      }
    }
    out.push_back(c.done());
  }
  {
    Check c("psi_1 = 1 - (1-z) Phi(0,z)");
    const QPoly one_minus_z{Rational(1), Rational(-1)};
    for (const auto* pat : all) {
      c.run(*pat, "", [&] {
        const RatFun rhs = RatFun(Rational(1)) - RatFun(one_minus_z) * core_polys(*pat).at(Rational(0));
        return psi(*pat, 1).psi == rhs;
      });
    }
    out.push_back(c.done());
  }
  {
    Check c("psi_r = psi_1^r");
    for (const auto* pat : all) {
      const RatFun first = psi(*pat, 1).psi;
      for (std::size_t r = 2; r <= grid.max_r; ++r)
        c.run(*pat, "r=" + std::to_string(r), [&] { return psi(*pat, r).psi == first.pow(r); });
    }
    out.push_back(c.done());
  }
  {
    Check c("waiting recursion equals series");
    for (const auto* pat : all)
      for (std::size_t r = 1; r <= grid.max_r; ++r)
        c.run(*pat, "r=" + std::to_string(r), [&] {
          return waiting_pmf(*pat, r, grid.survival_n) == waiting_pmf_recursive(*pat, r, grid.survival_n);
        });
    out.push_back(c.done());
  }
  {
    Check c("P(T_r > n) = P(X_n < r)");
    for (const auto* pat : all) {
      for (std::size_t r = 1; r <= grid.max_r; ++r) {
        const auto h = waiting_pmf(*pat, r, grid.survival_n);
        const auto tables = pmf_series(*pat, grid.survival_n);
        Rational cumulative;
        for (std::size_t n = 0; n <= grid.survival_n; ++n) {
          cumulative += h[n];
          c.run(*pat, "r=" + std::to_string(r) + " n=" + std::to_string(n), [&] {
            Rational below;
            for (std::size_t s = 0; s < r; ++s) below += tables[n].at(s);
            return 1 - cumulative == below;
          });
        }
      }
    }
    out.push_back(c.done());
  }
  return out;
}

}  // namespace runlaw::cli
