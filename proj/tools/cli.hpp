#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "runlaw/dna.hpp"
#include "runlaw/pattern.hpp"

namespace runlaw::cli {

enum class Command { Help, Dist, Wait, Simulate, Verify, Dna };
enum class Format { Json, Csv, Table };
enum class Grid { Small, Full };

/// A fully validated invocation.
struct JobSpec {
  Command command = Command::Help;
  std::string help_text;

  std::string pattern_text;
  std::vector<SymbolBound> bounds;
  std::vector<Rational> probs;

  std::size_t n = 0;
  std::size_t r = 1;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> s_min;
  std::optional<std::size_t> s_max;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  bool waiting = false;  // simulate: T_r instead of X_n

  Format format = Format::Json;
  int digits = 6;

  // dna
  std::optional<std::string> fasta;
  std::string literal;
  LiteralMode mode = LiteralMode::Exactly;
  std::size_t min_support = 1;
  std::string alphabet = "ACGT";
  bool skip_unknown = false;

  // verify
  Grid grid = Grid::Small;

  RunPattern pattern() const { return RunPattern(bounds, probs); }
};

/// Invalid command line; the message names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// args excludes the program name.
JobSpec parse_args(const std::vector<std::string>& args);

/// Executes a job, writing data to `out` and diagnostics to `err`. Returns
/// the process exit code.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

/// parse_args then run, mapping every error to a diagnostic and exit code:
/// 0 success, 1 failed verification or computation error, 2 usage error.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace runlaw::cli
