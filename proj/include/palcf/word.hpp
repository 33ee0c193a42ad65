#pragma once

#include <string>
#include <vector>

#include "palcf/numeric.hpp"

namespace palcf {

// A finite word of partial quotients a_1 a_2 ... a_n, every symbol a positive
// integer. Indexing is 1-based throughout the library to match the convergent
// recurrence conventions (index 0 is the virtual empty prefix).
struct Word {
  std::vector<Int> symbols;

  size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  const Int& at(size_t i) const;  // 1 <= i <= size()
  void push(Int v) { symbols.push_back(std::move(v)); }
};

// Throws std::invalid_argument if any symbol is < 1.
void validate_word(const Word& w);

Word word_from(std::initializer_list<long> symbols);
Word word_from(const std::vector<long>& symbols);

// Reversal a_n ... a_1.
Word mirror(const Word& w);

// First n symbols, n <= size.
Word prefix(const Word& w, size_t n);

// a_i ... a_j inclusive (1-based); i > j yields the empty word.
Word slice(const Word& w, size_t i, size_t j);

Word concat(const Word& a, const Word& b);

bool operator==(const Word& a, const Word& b);

// Fingerprint of the first `upto` symbols (decimal rendering, order-sensitive).
uint64_t word_hash(const Word& w, size_t upto);

// Plain-text persistence: two comment headers (source spec, count), then one
// decimal symbol per line.
void write_word_file(const std::string& path, const Word& w, const std::string& spec_label);
struct WordFile {
  Word word;
  std::string spec_label;
};
WordFile read_word_file(const std::string& path);

}  // namespace palcf
