#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "runlaw/exactdist.hpp"
#include "runlaw/pattern.hpp"

namespace runlaw {

/// Ordered nucleotide alphabet; the letter at position i is state i+1.
class AlphabetMap {
 public:
  /// Letters are case-insensitive and must be distinct.
  explicit AlphabetMap(std::string_view letters = "ACGT");

  std::size_t size() const { return letters_.size(); }
  const std::string& letters() const { return letters_; }
  /// 1-based state for a letter, or 0 when the letter is not in the alphabet.
  int state(char letter) const;

 private:
  std::string letters_;
};

enum class UnknownSymbols { Reject, Skip };

/// Records of a FASTA stream, in order, uppercased, with line breaks removed.
/// Characters outside the alphabet raise an error or are dropped.
std::vector<std::string> read_fasta(std::istream& in, const AlphabetMap& alphabet,
                                    UnknownSymbols policy = UnknownSymbols::Reject);
std::vector<std::string> read_fasta_file(const std::string& path, const AlphabetMap& alphabet,
                                         UnknownSymbols policy = UnknownSymbols::Reject);

/// Pooled exact letter frequencies over all records.
std::vector<Rational> estimate_probs(const std::vector<std::string>& seqs, const AlphabetMap& alphabet);

enum class LiteralMode { Exactly, AtLeast, AtMost };

/// Compiles a literal such as "ACCGT" into run bounds: runs A, CC, G, T give
/// lengths (1, 2, 1, 1), mapped through the mode. The literal's runs must be
/// the alphabet letters once each, in alphabet order.
std::vector<SymbolBound> compile_literal(std::string_view literal, const AlphabetMap& alphabet, LiteralMode mode);

struct FrequentPatternReport {
  std::size_t n = 0;
  std::size_t min_support = 0;
  std::vector<SymbolBound> bounds;
  PmfTable table;
  Rational tail;  // P(X >= min_support)
};

FrequentPatternReport frequent_pattern_report(const std::vector<Rational>& probs, std::string_view literal,
                                              LiteralMode mode, std::size_t n, std::size_t min_support,
                                              const AlphabetMap& alphabet = AlphabetMap());

}  // namespace runlaw
