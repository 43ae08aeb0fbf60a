#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "runlaw/pattern.hpp"
#include "runlaw/poly.hpp"
#include "runlaw/ratfun.hpp"

namespace runlaw {

/// Q[w][u]: a polynomial in the marker u whose coefficients lie in Q[w].
using MarkerCoeff = Poly<QPoly>;
/// A polynomial in z with Q[w][u] coefficients.
using MarkerPoly = Poly<MarkerCoeff>;

/// Adjacency weight between a left block and a right block.
enum class Marker { Zero, One, W, U };

/// Blocks with generating functions g_i and pairwise interactions w_ij (block
/// i on the left, block j on the right). The system generating function is
///   G = 1 + e M^{-1} g,   M_ii = 1,   M_ij = -g_i w_ij (i != j),
/// where e_i = 1 when a sequence may begin with block i. An empty `starts`
/// means every block may begin a sequence.
struct BlockSystem {
  std::vector<RatFun> blocks;
  std::vector<std::vector<Marker>> interactions;
  std::vector<std::string> labels;
  std::vector<bool> starts;

  bool can_start(std::size_t i) const { return starts.empty() || starts[i]; }

  std::size_t size() const { return blocks.size(); }
  /// Throws unless there is at least one block, the matrix is r x r and
  /// `starts` is empty or has r entries.
  void validate() const;
};

/// num/den with num, den in Q[w][u][z], scaled so that the innermost leading
/// coefficient of den is 1. No polynomial gcd is taken; compare values with
/// marker_equal.
class MarkerRatFun {
 public:
  MarkerRatFun(MarkerPoly num, MarkerPoly den);

  const MarkerPoly& num() const { return num_; }
  const MarkerPoly& den() const { return den_; }

  std::size_t u_degree() const;
  std::size_t w_degree() const;
  bool den_free_of_u() const;

  /// The function at fixed marker values, as a rational function of z.
  RatFun substitute(const Rational& w, const Rational& u) const;

  /// Coefficient of u^k as a rational function of z. Requires a u-free
  /// denominator and a w-free result.
  RatFun u_coefficient(std::size_t k) const;

  /// The u^0 part keeping w, as num/den over Q[w].
  std::pair<Poly<QPoly>, Poly<QPoly>> u_free_part() const;

 private:
  MarkerPoly num_;
  MarkerPoly den_;
};

bool marker_equal(const MarkerRatFun& a, const MarkerRatFun& b);

/// True when G equals P / (Q - (w - 1) R) as a rational function in (w, u, z).
bool matches(const MarkerRatFun& g, const DoubleGF& phi);

MarkerPoly lift_to_marker(const QPoly& p);

/// Evaluates G = 1 + e M^{-1} g exactly. Each row of M x = g is cleared of
/// its block denominator, and the matrix determinant lemma gives
///   G = det(A + b e^T) / det(A),
/// with both determinants taken by fraction-free (Bareiss) elimination.
/// Throws when M is singular.
MarkerRatFun system_gf(const BlockSystem& sys);

/// Six blocks (below, above, inside) for symbols 1 and 2; cross-symbol
/// interactions 1 except inside_1 -> inside_2, which carries w. For m = 2 its
/// system_gf is Phi; for longer patterns it covers sequences over symbols 1
/// and 2 only.
BlockSystem build_count_system(const RunPattern& pat);

/// Seven blocks: the six above plus a terminal copy of inside_2 that can only
/// follow inside_1 (with marker u), is followed by nothing and cannot begin a
/// sequence. The u
/// coefficient of system_gf is Y_2.
BlockSystem build_right_end_base_system(const RunPattern& pat);

/// Six blocks [N_prev, Y_prev, below_k, above_k, inside_k, terminal inside_k]
/// appending symbol `next` (0-based) to a prefix whose right-end functions are
/// Y_prev and N_prev; the u coefficient of system_gf is Y for the longer
/// prefix.
BlockSystem build_righted_system(const RunPattern& pat, const RatFun& y_prev, const RatFun& n_prev,
                                 std::size_t next);

/// Five blocks [N_prev, Y_prev, below_k, above_k, inside_k] with w on
/// Y_prev -> inside_k; system_gf is the double generating function of the
/// pattern truncated after symbol `next`.
BlockSystem build_extension_system(const RunPattern& pat, const RatFun& y_prev, const RatFun& n_prev,
                                   std::size_t next);

/// Y and N for the first `prefix` symbols (prefix >= 2), derived only through
/// block systems: the seven-block base case, then righted systems.
RightEndGfs right_end_by_transfer(const RunPattern& pat, std::size_t prefix);

/// Phi for the whole pattern from block systems alone.
MarkerRatFun phi_by_transfer(const RunPattern& pat);

}  // namespace runlaw
