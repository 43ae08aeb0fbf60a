#include "runlaw/transfer.hpp"

#include <algorithm>

namespace runlaw {
namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("transfer", message); }

const Rational& deep_leading(const Rational& c) { return c; }
template <class C>
const Rational& deep_leading(const Poly<C>& p) {
  return deep_leading(p.leading());
}

MarkerCoeff marker_value(Marker m) {
  switch (m) {
    case Marker::Zero: return MarkerCoeff();
    case Marker::One: return MarkerCoeff(1L);
    case Marker::W: return MarkerCoeff(QPoly{Rational(0), Rational(1)});
    case Marker::U: return MarkerCoeff{QPoly(0L), QPoly(1L)};
  }
  return MarkerCoeff();
}

// Determinant by Bareiss fraction-free elimination with row pivoting. Every
// division is exact in an integral domain.
template <class R>
R bareiss_determinant(std::vector<std::vector<R>> a) {
  const std::size_t n = a.size();
  if (n == 0) return R(1L);
  bool negate = false;
  R previous(1L);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(a[k][k])) {
      std::size_t pivot = k + 1;
      while (pivot < n && is_zero(a[pivot][k])) ++pivot;
      if (pivot == n) return R();
      std::swap(a[k], a[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        a[i][j] = divide_exact(t, previous);
      }
      a[i][k] = R();
    }
    previous = a[k][k];
  }
  R det = a[n - 1][n - 1];
  return negate ? -det : det;
}

std::size_t inner_degree(const MarkerPoly& p, bool want_u) {
  long best = 0;
  for (const auto& c : p.coeffs()) {
    if (want_u) {
      best = std::max(best, c.degree());
    } else {
      for (const auto& wc : c.coeffs()) best = std::max(best, wc.degree());
    }
  }
  return static_cast<std::size_t>(best);
}

Poly<QPoly> u_slice(const MarkerPoly& p, std::size_t k) {
  return p.map([k](const MarkerCoeff& c) { return c.coeff(k); });
}

QPoly w_free(const Poly<QPoly>& p) {
  return p.map([](const QPoly& c) {
    if (c.degree() > 0) fail("result still depends on w");
    return c.coeff(0);
  });
}

}  // namespace

void BlockSystem::validate() const {
  if (blocks.empty()) fail("a block system needs at least one block");
  if (interactions.size() != blocks.size()) fail("interaction matrix has the wrong number of rows");
  for (const auto& row : interactions)
    if (row.size() != blocks.size()) fail("interaction matrix is not square");
  if (!starts.empty() && starts.size() != blocks.size()) fail("start vector has the wrong length");
}

MarkerRatFun::MarkerRatFun(MarkerPoly num, MarkerPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail("zero denominator");
  const Rational scale = 1 / deep_leading(den_);
  if (scale != 1) {
    num_ = num_ * scale;
    den_ = den_ * scale;
  }
}

std::size_t MarkerRatFun::u_degree() const { return std::max(inner_degree(num_, true), inner_degree(den_, true)); }

std::size_t MarkerRatFun::w_degree() const {
  return std::max(inner_degree(num_, false), inner_degree(den_, false));
}

bool MarkerRatFun::den_free_of_u() const { return inner_degree(den_, true) == 0; }

RatFun MarkerRatFun::substitute(const Rational& w, const Rational& u) const {
  auto at = [&](const MarkerPoly& p) { return p.map([&](const MarkerCoeff& c) { return c.eval(u).eval(w); }); };
  const QPoly d = at(den_);
  if (d.is_zero()) fail("denominator vanishes at the given marker values");
  return RatFun::normalize(at(num_), d);
}

RatFun MarkerRatFun::u_coefficient(std::size_t k) const {
  if (!den_free_of_u()) fail("denominator depends on u; coefficient extraction is not defined");
  return RatFun::normalize(w_free(u_slice(num_, k)), w_free(u_slice(den_, 0)));
}

std::pair<Poly<QPoly>, Poly<QPoly>> MarkerRatFun::u_free_part() const {
  if (!den_free_of_u()) fail("denominator depends on u");
  return {u_slice(num_, 0), u_slice(den_, 0)};
}

bool marker_equal(const MarkerRatFun& a, const MarkerRatFun& b) {
  return a.num() * b.den() == b.num() * a.den();
}

MarkerPoly lift_to_marker(const QPoly& p) {
  return p.map([](const Rational& c) { return MarkerCoeff(QPoly(c)); });
}

bool matches(const MarkerRatFun& g, const DoubleGF& phi) {
  auto lift_bi = [](const Poly<QPoly>& p) { return p.map([](const QPoly& c) { return MarkerCoeff(c); }); };
  return marker_equal(g, MarkerRatFun(lift_bi(phi.numerator()), lift_bi(phi.denominator())));
}

MarkerRatFun system_gf(const BlockSystem& sys) {
  sys.validate();
  const std::size_t r = sys.size();
  std::vector<MarkerPoly> num(r);
  std::vector<MarkerPoly> den(r);
  for (std::size_t i = 0; i < r; ++i) {
    num[i] = lift_to_marker(sys.blocks[i].num());
    den[i] = lift_to_marker(sys.blocks[i].den());
  }

  // Row i of M x = g times den_i:  den_i x_i - num_i sum_j w_ij x_j = num_i.
  std::vector<std::vector<MarkerPoly>> a(r, std::vector<MarkerPoly>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) {
        a[i][j] = den[i];
      } else if (sys.interactions[i][j] != Marker::Zero) {
        a[i][j] = -(num[i] * marker_value(sys.interactions[i][j]));
      }
    }
  }
  MarkerPoly det_a = bareiss_determinant(a);
  if (det_a.is_zero()) fail("interaction matrix is singular");

  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (sys.can_start(j)) a[i][j] += num[i];
  MarkerPoly det_shifted = bareiss_determinant(std::move(a));
  return MarkerRatFun(std::move(det_shifted), std::move(det_a));
}

namespace {

using M = Marker;

void require_symbols(const RunPattern& pat, std::size_t count) {
  if (pat.m() < count) fail("pattern has fewer than " + std::to_string(count) + " symbols");
}

}  // namespace

BlockSystem build_count_system(const RunPattern& pat) {
  require_symbols(pat, 2);
  const BlockGfs s1 = block_gfs(pat, 0);
  const BlockGfs s2 = block_gfs(pat, 1);
  BlockSystem sys;
  sys.blocks = {s1.below, s1.above, s1.inside, s2.below, s2.above, s2.inside};
  sys.labels = {"below_1", "above_1", "inside_1", "below_2", "above_2", "inside_2"};
  sys.interactions = {
      {M::Zero, M::Zero, M::Zero, M::One, M::One, M::One},
      {M::Zero, M::Zero, M::Zero, M::One, M::One, M::One},
      {M::Zero, M::Zero, M::Zero, M::One, M::One, M::W},
      {M::One, M::One, M::One, M::Zero, M::Zero, M::Zero},
      {M::One, M::One, M::One, M::Zero, M::Zero, M::Zero},
      {M::One, M::One, M::One, M::Zero, M::Zero, M::Zero},
  };
  return sys;
}

BlockSystem build_right_end_base_system(const RunPattern& pat) {
  require_symbols(pat, 2);
  const BlockGfs s1 = block_gfs(pat, 0);
  const BlockGfs s2 = block_gfs(pat, 1);
  BlockSystem sys;
  sys.blocks = {s1.below, s1.above, s1.inside, s2.below, s2.above, s2.inside, s2.inside};
  sys.labels = {"below_1", "above_1", "inside_1", "below_2", "above_2", "inside_2", "terminal_2"};
  sys.interactions = {
      {M::Zero, M::Zero, M::Zero, M::One, M::One, M::One, M::Zero},
      {M::Zero, M::Zero, M::Zero, M::One, M::One, M::One, M::Zero},
      {M::Zero, M::Zero, M::Zero, M::One, M::One, M::One, M::U},
      {M::One, M::One, M::One, M::Zero, M::Zero, M::Zero, M::Zero},
      {M::One, M::One, M::One, M::Zero, M::Zero, M::Zero, M::Zero},
      {M::One, M::One, M::One, M::Zero, M::Zero, M::Zero, M::Zero},
      {M::Zero, M::Zero, M::Zero, M::Zero, M::Zero, M::Zero, M::Zero},
  };
  sys.starts = {true, true, true, true, true, true, false};
  return sys;
}

BlockSystem build_righted_system(const RunPattern& pat, const RatFun& y_prev, const RatFun& n_prev,
                                 std::size_t next) {
  if (next < 2 || next >= pat.m()) fail("righted system needs 2 <= next < m");
  const BlockGfs s = block_gfs(pat, next);
  BlockSystem sys;
  sys.blocks = {n_prev, y_prev, s.below, s.above, s.inside, s.inside};
  sys.labels = {"N_prev", "Y_prev", "below", "above", "inside", "terminal"};
  sys.interactions = {
      {M::Zero, M::Zero, M::One, M::One, M::One, M::Zero},
      {M::Zero, M::Zero, M::One, M::One, M::One, M::U},
      {M::One, M::One, M::Zero, M::Zero, M::Zero, M::Zero},
      {M::One, M::One, M::Zero, M::Zero, M::Zero, M::Zero},
      {M::One, M::One, M::Zero, M::Zero, M::Zero, M::Zero},
      {M::Zero, M::Zero, M::Zero, M::Zero, M::Zero, M::Zero},
  };
  sys.starts = {true, true, true, true, true, false};
  return sys;
}

BlockSystem build_extension_system(const RunPattern& pat, const RatFun& y_prev, const RatFun& n_prev,
                                   std::size_t next) {
  if (next < 2 || next >= pat.m()) fail("extension system needs 2 <= next < m");
  const BlockGfs s = block_gfs(pat, next);
  BlockSystem sys;
  sys.blocks = {n_prev, y_prev, s.below, s.above, s.inside};
  sys.labels = {"N_prev", "Y_prev", "below", "above", "inside"};
  sys.interactions = {
      {M::Zero, M::Zero, M::One, M::One, M::One},
      {M::Zero, M::Zero, M::One, M::One, M::W},
      {M::One, M::One, M::Zero, M::Zero, M::Zero},
      {M::One, M::One, M::Zero, M::Zero, M::Zero},
      {M::One, M::One, M::Zero, M::Zero, M::Zero},
  };
  return sys;
}

namespace {

RightEndGfs split_right_end(const MarkerRatFun& g) {
  RightEndGfs out;
  out.Y = g.u_coefficient(1);
  // The u^0 part sums every sequence over the prefix alphabet, the empty one
  // included.
  out.N = g.u_coefficient(0) - RatFun(Rational(1)) - out.Y;
  return out;
}

}  // namespace

RightEndGfs right_end_by_transfer(const RunPattern& pat, std::size_t prefix) {
  if (prefix < 2 || prefix > pat.m()) fail("prefix must lie in [2, m]");
  RightEndGfs cur = split_right_end(system_gf(build_right_end_base_system(pat)));
  for (std::size_t next = 2; next < prefix; ++next)
    cur = split_right_end(system_gf(build_righted_system(pat, cur.Y, cur.N, next)));
  return cur;
}

MarkerRatFun phi_by_transfer(const RunPattern& pat) {
  if (pat.m() == 2) return system_gf(build_count_system(pat));
  const RightEndGfs prev = right_end_by_transfer(pat, pat.m() - 1);
  return system_gf(build_extension_system(pat, prev.Y, prev.N, pat.m() - 1));
}

}  // namespace runlaw
