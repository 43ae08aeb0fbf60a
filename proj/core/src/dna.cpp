#include "runlaw/dna.hpp"

#include <cctype>
#include <fstream>

namespace runlaw {
namespace {

[[noreturn]] void fail(const std::string& message) { throw Error("dna", message); }

char upper(char c) { return static_cast<char>(std::toupper(static_cast<unsigned char>(c))); }

}  // namespace

AlphabetMap::AlphabetMap(std::string_view letters) {
  for (char c : letters) {
    const char u = upper(c);
    if (!std::isalpha(static_cast<unsigned char>(u))) fail(std::string("alphabet letter '") + c + "' is not a letter");
    if (letters_.find(u) != std::string::npos) fail(std::string("alphabet letter '") + u + "' appears twice");
    letters_.push_back(u);
  }
  if (letters_.size() < 2) fail("alphabet needs at least 2 letters");
}

int AlphabetMap::state(char letter) const {
  const auto pos = letters_.find(upper(letter));
  return pos == std::string::npos ? 0 : static_cast<int>(pos + 1);
}

std::vector<std::string> read_fasta(std::istream& in, const AlphabetMap& alphabet, UnknownSymbols policy) {
  std::vector<std::string> records;
  std::string line;
  std::size_t line_no = 0;
  bool in_record = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '>') {
      records.emplace_back();
      in_record = true;
      continue;
    }
    if (!in_record) {
      bool blank = true;
      for (char c : line) blank = blank && std::isspace(static_cast<unsigned char>(c));
      if (blank) continue;
      fail("line " + std::to_string(line_no) + ": sequence data before the first '>' header");
    }
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (alphabet.state(c) == 0) {
        if (policy == UnknownSymbols::Skip) continue;
        fail("line " + std::to_string(line_no) + ": unknown symbol '" + c + "'");
      }
      records.back().push_back(upper(c));
    }
  }
  if (records.empty()) fail("no FASTA records found");
  return records;
}

std::vector<std::string> read_fasta_file(const std::string& path, const AlphabetMap& alphabet, UnknownSymbols policy) {
  std::ifstream in(path);
  if (!in) fail("cannot open FASTA file '" + path + "'");
  return read_fasta(in, alphabet, policy);
}

std::vector<Rational> estimate_probs(const std::vector<std::string>& seqs, const AlphabetMap& alphabet) {
  std::vector<unsigned long> counts(alphabet.size(), 0);
  unsigned long total = 0;
  for (const auto& s : seqs) {
    for (char c : s) {
      const int state = alphabet.state(c);
      if (state == 0) fail(std::string("unknown symbol '") + c + "'");
      ++counts[static_cast<std::size_t>(state - 1)];
      ++total;
    }
  }
  if (total == 0) fail("no symbols to estimate frequencies from");
  std::vector<Rational> out;
  for (auto c : counts) {
    Rational q(c, total);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

std::vector<SymbolBound> compile_literal(std::string_view literal, const AlphabetMap& alphabet, LiteralMode mode) {
  if (literal.empty()) fail("empty pattern literal");
  std::vector<std::pair<char, std::size_t>> runs;
  for (char c : literal) {
    const char u = upper(c);
    if (alphabet.state(u) == 0) fail(std::string("pattern letter '") + c + "' is not in the alphabet " + alphabet.letters());
    if (!runs.empty() && runs.back().first == u) {
      ++runs.back().second;
    } else {
      runs.emplace_back(u, 1);
    }
  }
  bool ordered = runs.size() == alphabet.size();
  for (std::size_t i = 0; ordered && i < runs.size(); ++i) ordered = alphabet.state(runs[i].first) == static_cast<int>(i + 1);
  if (!ordered)
    fail("pattern literal '" + std::string(literal) + "' must consist of one run of each alphabet letter in the order " +
         alphabet.letters() + " (symbols must follow 1, 2, ..., m); reorder the alphabet to match the literal");

  std::vector<SymbolBound> bounds;
  for (const auto& [letter, length] : runs) {
    switch (mode) {
      case LiteralMode::Exactly: bounds.push_back(exactly(length)); break;
      case LiteralMode::AtLeast: bounds.push_back(at_least(length)); break;
      case LiteralMode::AtMost: bounds.push_back(at_most(length)); break;
    }
  }
  return bounds;
}

FrequentPatternReport frequent_pattern_report(const std::vector<Rational>& probs, std::string_view literal,
                                              LiteralMode mode, std::size_t n, std::size_t min_support,
                                              const AlphabetMap& alphabet) {
  FrequentPatternReport out;
  out.n = n;
  out.min_support = min_support;
  out.bounds = compile_literal(literal, alphabet, mode);
  const RunPattern pat(out.bounds, probs);
  out.table = pmf(pat, n);
  out.tail = out.table.tail(min_support);
  return out;
}

}  // namespace runlaw
