#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "runlaw/exactdist.hpp"
#include "runlaw/pattern.hpp"

namespace runlaw {

/// Symbols are labels 1..m.
using TrialSequence = std::vector<int>;

struct RunToken {
  int symbol = 0;
  std::size_t length = 0;
  friend bool operator==(const RunToken&, const RunToken&) = default;
};

/// Maximal-run decomposition. With m > 0, symbols outside 1..m throw.
std::vector<RunToken> tokenize(std::span<const int> seq, int m = 0);

/// Inverse of tokenize.
TrialSequence concatenate(std::span<const RunToken> tokens);

/// Windows of m consecutive maximal runs with symbols 1..m whose lengths lie
/// in the pattern's bounds. Runs touching either end of the sequence count as
/// maximal.
std::size_t count_occurrences(const RunPattern& pat, std::span<const int> seq);

/// Streaming form of count_occurrences: push symbols one at a time and read
/// the count for the prefix seen so far.
class OccurrenceTracker {
 public:
  explicit OccurrenceTracker(const RunPattern& pat);
  /// Appends a symbol and returns the count for the extended prefix.
  std::size_t push(int symbol);
  std::size_t count() const { return settled_ + (open_window_matches() ? 1 : 0); }
  void reset();

 private:
  bool window_matches_ending_at_back() const;
  bool open_window_matches() const { return window_matches_ending_at_back(); }

  const RunPattern* pat_;
  std::deque<RunToken> recent_;  // at most m tokens
  std::size_t settled_ = 0;      // matches whose last run is already closed
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;

/// Exact pmf by enumerating all m^n sequences, grouping them by symbol
/// composition so every weight is prod p_i^{c_i}. Throws when m^n exceeds
/// the budget.
PmfTable exact_pmf_bruteforce(const RunPattern& pat, std::size_t n,
                              std::uint64_t budget = kDefaultEnumerationBudget);

/// Identifies the generator so seeded output can be reproduced elsewhere.
inline constexpr const char* kRngAlgorithm = "mt19937_64; shard seed = seed_seq{seed_lo, seed_hi, shard}; u = (x >> 11) * 2^-53";
inline constexpr std::size_t kSimulationShards = 64;

struct SimulationResult {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;  // counts[s] = samples with X = s (or T = s)
  std::vector<double> estimate;       // counts / samples
  std::vector<double> standard_error; // sqrt(p(1-p)/N) per bin
  double mean = 0.0;
  double mean_standard_error = 0.0;
  std::uint64_t censored = 0;          // waiting runs that hit the step cap
  std::string rng = kRngAlgorithm;
};

/// Empirical pmf of X at length n. Deterministic for a given seed regardless
/// of thread count: samples are split into a fixed number of shards, each with
/// its own derived seed, and merged in shard order.
SimulationResult simulate(const RunPattern& pat, std::size_t n, std::uint64_t samples, std::uint64_t seed,
                          unsigned threads = 0);

/// Empirical law of the first time the running count X_t reaches r. For
/// patterns whose last upper bound is infinite X_t never decreases and this
/// is the law whose pgf is psi_r.
SimulationResult simulate_waiting(const RunPattern& pat, std::size_t r, std::uint64_t samples, std::uint64_t seed,
                                  std::uint64_t max_steps = 1'000'000, unsigned threads = 0);

/// Thread count from RUNLAW_THREADS, else hardware concurrency (at least 1).
unsigned default_thread_count();

}  // namespace runlaw
