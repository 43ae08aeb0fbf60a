#include "runlaw/oracle.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <thread>
#include <unordered_map>

namespace runlaw {
namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("oracle", message); }

// Counts matching windows over a run-length encoding held in caller buffers.
std::size_t count_windows(const RunPattern& pat, std::span<const int> symbols, std::span<const std::size_t> lengths) {
  const std::size_t m = pat.m();
  if (symbols.size() < m) return 0;
  std::size_t count = 0;
  for (std::size_t start = 0; start + m <= symbols.size(); ++start) {
    if (symbols[start] != 1) continue;
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j)
      ok = symbols[start + j] == static_cast<int>(j + 1) && pat.bound(j).admits(lengths[start + j]);
    if (ok) ++count;
  }
  return count;
}

}  // namespace

std::vector<RunToken> tokenize(std::span<const int> seq, int m) {
  std::vector<RunToken> out;
  for (int s : seq) {
    if (m > 0 && (s < 1 || s > m)) fail("symbol " + std::to_string(s) + " outside 1.." + std::to_string(m));
    if (!out.empty() && out.back().symbol == s) {
      ++out.back().length;
    } else {
      out.push_back({s, 1});
    }
  }
  return out;
}

TrialSequence concatenate(std::span<const RunToken> tokens) {
  TrialSequence out;
  for (const auto& t : tokens) out.insert(out.end(), t.length, t.symbol);
  return out;
}

std::size_t count_occurrences(const RunPattern& pat, std::span<const int> seq) {
  const auto tokens = tokenize(seq, static_cast<int>(pat.m()));
  std::vector<int> symbols;
  std::vector<std::size_t> lengths;
  for (const auto& t : tokens) {
    symbols.push_back(t.symbol);
    lengths.push_back(t.length);
  }
  return count_windows(pat, symbols, lengths);
}

OccurrenceTracker::OccurrenceTracker(const RunPattern& pat) : pat_(&pat) {}

void OccurrenceTracker::reset() {
  recent_.clear();
  settled_ = 0;
}

bool OccurrenceTracker::window_matches_ending_at_back() const {
  const std::size_t m = pat_->m();
  if (recent_.size() < m) return false;
  const std::size_t offset = recent_.size() - m;
  for (std::size_t j = 0; j < m; ++j) {
    const RunToken& t = recent_[offset + j];
    if (t.symbol != static_cast<int>(j + 1) || !pat_->bound(j).admits(t.length)) return false;
  }
  return true;
}

std::size_t OccurrenceTracker::push(int symbol) {
  if (!recent_.empty() && recent_.back().symbol == symbol) {
    ++recent_.back().length;
  } else {
    if (window_matches_ending_at_back()) ++settled_;
    recent_.push_back({symbol, 1});
    if (recent_.size() > pat_->m()) recent_.pop_front();
  }
  return count();
}

PmfTable exact_pmf_bruteforce(const RunPattern& pat, std::size_t n, std::uint64_t budget) {
  const std::size_t m = pat.m();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > budget / m) fail("enumeration of " + std::to_string(m) + "^" + std::to_string(n) + " sequences exceeds the budget");
    total *= m;
  }

  // Key: occurrence count and symbol composition packed in base n+1.
  const std::uint64_t base = n + 1;
  std::uint64_t limit = 1;
  for (std::size_t i = 0; i <= m; ++i) {
    if (limit > UINT64_MAX / base) fail("composition key does not fit in 64 bits");
    limit *= base;
  }
  std::unordered_map<std::uint64_t, std::uint64_t> groups;

  std::vector<int> seq(n, 1);
  std::vector<std::size_t> composition(m, 0);
  std::vector<int> run_symbols(n);
  std::vector<std::size_t> run_lengths(n);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::size_t runs = 0;
    std::fill(composition.begin(), composition.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++composition[static_cast<std::size_t>(seq[i] - 1)];
      if (runs > 0 && run_symbols[runs - 1] == seq[i]) {
        ++run_lengths[runs - 1];
      } else {
        run_symbols[runs] = seq[i];
        run_lengths[runs] = 1;
        ++runs;
      }
    }
    const std::size_t count = count_windows(pat, std::span(run_symbols.data(), runs), std::span(run_lengths.data(), runs));
    std::uint64_t key = count;
    for (std::size_t i = 0; i < m; ++i) key = key * base + composition[i];
    ++groups[key];

    // Base-m counter increment over labels 1..m.
    for (std::size_t i = 0; i < n; ++i) {
      if (seq[i] < static_cast<int>(m)) {
        ++seq[i];
        break;
      }
      seq[i] = 1;
    }
  }

  std::vector<std::vector<Rational>> powers(m, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    powers[i][0] = 1;
    for (std::size_t c = 1; c <= n; ++c) powers[i][c] = powers[i][c - 1] * pat.prob(i);
  }

  PmfTable out{n, std::vector<Rational>(n / pat.min_length() + 1)};
  // Ordered traversal keeps the summation order reproducible.
  std::map<std::uint64_t, std::uint64_t> ordered(groups.begin(), groups.end());
  for (const auto& [key, multiplicity] : ordered) {
    std::uint64_t rest = key;
    Rational weight(static_cast<unsigned long>(multiplicity));
    for (std::size_t i = m; i-- > 0;) {
      weight *= powers[i][rest % base];
      rest /= base;
    }
    if (rest >= out.probs.size()) fail("occurrence count exceeds floor(n / l)");
    out.probs[rest] += weight;
  }
  return out;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("RUNLAW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

class SymbolSampler {
 public:
  explicit SymbolSampler(const RunPattern& pat) {
    Rational cumulative;
    for (std::size_t i = 0; i < pat.m(); ++i) {
      cumulative += pat.prob(i);
      thresholds_.push_back(cumulative.get_d());
      if (sgn(pat.prob(i)) > 0) last_positive_ = static_cast<int>(i + 1);
    }
  }

  template <class Engine>
  int draw(Engine& engine) const {
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    for (std::size_t i = 0; i < thresholds_.size(); ++i)
      if (u < thresholds_[i]) return static_cast<int>(i + 1);
    return last_positive_;
  }

 private:
  std::vector<double> thresholds_;
  int last_positive_ = 1;
};

std::mt19937_64 shard_engine(std::uint64_t seed, std::size_t shard) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard)};
  return std::mt19937_64(seq);
}

struct ShardTally {
  std::vector<std::uint64_t> counts;
  long double sum = 0;
  long double sum_sq = 0;
  std::uint64_t censored = 0;

  void add(std::size_t value) {
    if (value >= counts.size()) counts.resize(value + 1, 0);
    ++counts[value];
    sum += static_cast<long double>(value);
    sum_sq += static_cast<long double>(value) * static_cast<long double>(value);
  }
};

template <class Body>
SimulationResult run_sharded(std::uint64_t samples, std::uint64_t seed, unsigned threads, Body body) {
  if (samples == 0) fail("samples must be at least 1");
  if (threads == 0) threads = default_thread_count();
  const std::size_t shards = kSimulationShards;
  std::vector<ShardTally> tallies(shards);
  auto work = [&](unsigned worker) {
    for (std::size_t shard = worker; shard < shards; shard += threads) {
      const std::uint64_t begin = samples * shard / shards;
      const std::uint64_t end = samples * (shard + 1) / shards;
      auto engine = shard_engine(seed, shard);
      for (std::uint64_t i = begin; i < end; ++i) body(engine, tallies[shard]);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  SimulationResult out;
  out.samples = samples;
  out.seed = seed;
  long double sum = 0;
  long double sum_sq = 0;
  for (const auto& t : tallies) {
    if (t.counts.size() > out.counts.size()) out.counts.resize(t.counts.size(), 0);
    for (std::size_t s = 0; s < t.counts.size(); ++s) out.counts[s] += t.counts[s];
    sum += t.sum;
    sum_sq += t.sum_sq;
    out.censored += t.censored;
  }
  const double total = static_cast<double>(samples);
  for (auto c : out.counts) {
    const double p = static_cast<double>(c) / total;
    out.estimate.push_back(p);
    out.standard_error.push_back(std::sqrt(p * (1.0 - p) / total));
  }
  const std::uint64_t observed = samples - out.censored;
  if (observed > 0) {
    const long double mean = sum / static_cast<long double>(observed);
    const long double var = sum_sq / static_cast<long double>(observed) - mean * mean;
    out.mean = static_cast<double>(mean);
    out.mean_standard_error = observed > 1 ? std::sqrt(static_cast<double>(std::max<long double>(var, 0)) /
                                                       static_cast<double>(observed))
                                           : 0.0;
  }
  return out;
}

}  // namespace

SimulationResult simulate(const RunPattern& pat, std::size_t n, std::uint64_t samples, std::uint64_t seed,
                          unsigned threads) {
  const SymbolSampler sampler(pat);
  SimulationResult out = run_sharded(samples, seed, threads, [&](std::mt19937_64& engine, ShardTally& tally) {
    OccurrenceTracker tracker(pat);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) count = tracker.push(sampler.draw(engine));
    tally.add(count);
  });
  // Report every reachable count, observed or not.
  const std::size_t bins = n / pat.min_length() + 1;
  if (out.counts.size() < bins) {
    out.counts.resize(bins, 0);
    out.estimate.resize(bins, 0.0);
    out.standard_error.resize(bins, 0.0);
  }
  return out;
}

SimulationResult simulate_waiting(const RunPattern& pat, std::size_t r, std::uint64_t samples, std::uint64_t seed,
                                  std::uint64_t max_steps, unsigned threads) {
  if (r == 0) fail("occurrence index r must be at least 1");
  for (std::size_t i = 0; i < pat.m(); ++i)
    if (is_zero(pat.prob(i))) fail("pattern is not realizable: symbol " + std::to_string(i + 1) + " has probability 0");
  const SymbolSampler sampler(pat);
  return run_sharded(samples, seed, threads, [&](std::mt19937_64& engine, ShardTally& tally) {
    OccurrenceTracker tracker(pat);
    for (std::uint64_t t = 1; t <= max_steps; ++t) {
      if (tracker.push(sampler.draw(engine)) >= r) {
        tally.add(static_cast<std::size_t>(t));
        return;
      }
    }
    ++tally.censored;
  });
}

}  // namespace runlaw
