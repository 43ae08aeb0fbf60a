#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "runlaw/pattern.hpp"

namespace runlaw::cli {

struct GridSpec {
  std::size_t max_length;  // per-symbol l, k <= max_length for m = 2
  std::size_t n2;          // horizon for m = 2 oracle checks
  bool wide_m3;            // larger m = 3 pattern set
  std::size_t n3;          // horizon for m = 3 oracle checks
  std::size_t max_r;       // survival identity r <= max_r
  std::size_t survival_n;  // survival identity n <= survival_n
};

GridSpec small_grid();
GridSpec full_grid();

/// m = 2 patterns: every mode combination with bounds up to max_length,
/// times three probability vectors.
std::vector<RunPattern> grid_patterns_m2(std::size_t max_length);
/// m = 3 patterns with mixed modes per symbol.
std::vector<RunPattern> grid_patterns_m3(bool wide);

struct CheckOutcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// Runs the cross-module identity suite, one outcome per identity.
std::vector<CheckOutcome> run_verification(const GridSpec& grid);

}  // namespace runlaw::cli
