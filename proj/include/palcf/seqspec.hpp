#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "palcf/generators.hpp"
#include "palcf/word.hpp"

namespace palcf {

// Sequence-spec grammar shared by the CLI and the checkpoint format:
//
//   explicit:[1,2,3]             literal quotients
//   runs:1^5,2^3,1^4             run-length encoded quotients
//   tm(a,b)                      Thue-Morse word over {a,b}
//   baker(a,b;lambdas=2,3,5)     alternating runs with explicit lengths
//   baker(a,b;gamma=3/2,seed=2)  alternating runs, l_{k+1} = ceil(gamma*l_k)
//   thm5(c,s)                    palindrome-completion word for phi = c*x^(-s)
//   thm5(c,s;stages=4)           same with an explicit stage count (default 3)
//   file:PATH                    quotients from a word file, one per line
//
// Specs are parsed strictly (no interior whitespace) and re-rendered in a
// canonical form so reports and checkpoints can compare specs by string
// equality: rationals are reduced, thm5 always carries its stage count.

struct SpecParseError : std::runtime_error {
  size_t position;
  SpecParseError(size_t pos, const std::string& what_arg)
      : std::runtime_error("spec parse error at position " + std::to_string(pos) + ": " +
                           what_arg),
        position(pos) {}
};

struct SeqSpec {
  enum class Kind { Explicit, Runs, ThueMorse, Baker, Theorem5, File };
  Kind kind = Kind::Explicit;

  Word symbols;                                 // Explicit
  std::vector<std::pair<Int, Int>> run_pairs;   // Runs: (symbol, repeat)
  Int tm_a, tm_b;                               // ThueMorse
  BakerSpec baker;                              // Baker
  Rat phi_c, phi_s;                             // Theorem5: phi = c * x^(-s)
  size_t stages = 3;                            // Theorem5 stage count
  std::string path;                             // File
};

SeqSpec parse_spec(const std::string& text);
std::string canonical_spec(const SeqSpec& spec);

// True when the family can produce arbitrarily long prefixes (tm, baker with
// a growth rule). Such specs need an explicit prefix length to materialize.
bool is_unbounded(const SeqSpec& spec);

// Symbol count of a bounded spec. Throws std::invalid_argument on unbounded
// families; reads the file for Kind::File.
size_t natural_length(const SeqSpec& spec);

// First n quotients. n = 0 means the natural length (bounded specs only).
// Throws std::invalid_argument when the spec cannot cover n symbols.
Word materialize(const SeqSpec& spec, size_t n);

// Theorem5 accessors (kind must be Theorem5; throws std::invalid_argument
// otherwise). theorem5_state runs the construction for spec.stages stages.
ApproxOrderFunction phi_of(const SeqSpec& spec);
Theorem5State theorem5_state(const SeqSpec& spec);

}  // namespace palcf
