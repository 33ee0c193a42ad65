#include "palcf/word.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace palcf {

const Int& Word::at(size_t i) const {
  if (i < 1 || i > symbols.size()) throw std::out_of_range("Word::at: index outside [1, size]");
  return symbols[i - 1];
}

void validate_word(const Word& w) {
  for (size_t i = 0; i < w.symbols.size(); ++i) {
    if (sgn(w.symbols[i]) <= 0)
      throw std::invalid_argument("word symbol at position " + std::to_string(i + 1) +
                                  " is not a positive integer");
  }
}

Word word_from(std::initializer_list<long> symbols) {
  Word w;
  w.symbols.reserve(symbols.size());
  for (long s : symbols) w.symbols.emplace_back(s);
  validate_word(w);
  return w;
}

Word word_from(const std::vector<long>& symbols) {
  Word w;
  w.symbols.reserve(symbols.size());
  for (long s : symbols) w.symbols.emplace_back(s);
  validate_word(w);
  return w;
}

Word mirror(const Word& w) {
  Word r;
  r.symbols.assign(w.symbols.rbegin(), w.symbols.rend());
  return r;
}

Word prefix(const Word& w, size_t n) {
  if (n > w.size()) throw std::out_of_range("prefix: length exceeds word size");
  Word r;
  r.symbols.assign(w.symbols.begin(), w.symbols.begin() + static_cast<long>(n));
  return r;
}

Word slice(const Word& w, size_t i, size_t j) {
  if (i > j) return Word{};
  if (i < 1 || j > w.size()) throw std::out_of_range("slice: range outside [1, size]");
  Word r;
  r.symbols.assign(w.symbols.begin() + static_cast<long>(i - 1),
                   w.symbols.begin() + static_cast<long>(j));
  return r;
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.symbols.insert(r.symbols.end(), b.symbols.begin(), b.symbols.end());
  return r;
}

bool operator==(const Word& a, const Word& b) { return a.symbols == b.symbols; }

uint64_t word_hash(const Word& w, size_t upto) {
  if (upto > w.size()) throw std::out_of_range("word_hash: upto exceeds word size");
  uint64_t h = 14695981039346656037ULL;
  for (size_t i = 0; i < upto; ++i) {
    const std::string dec = w.symbols[i].get_str();
    h = fnv1a64(dec, h);
    h = fnv1a64("\n", 1, h);
  }
  return h;
}

void write_word_file(const std::string& path, const Word& w, const std::string& spec_label) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("write_word_file: cannot open " + path);
  out << "# spec: " << spec_label << "\n";
  out << "# count: " << w.size() << "\n";
  for (const Int& s : w.symbols) out << s.get_str() << "\n";
  if (!out) throw std::runtime_error("write_word_file: write failed for " + path);
}

WordFile read_word_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_word_file: cannot open " + path);
  WordFile wf;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string spec_prefix = "# spec: ";
      if (line.rfind(spec_prefix, 0) == 0) wf.spec_label = line.substr(spec_prefix.size());
      continue;
    }
    try {
      wf.word.push(parse_int(line));
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("read_word_file: bad symbol line '" + line + "' in " + path);
    }
  }
  validate_word(wf.word);
  return wf;
}

}  // namespace palcf
