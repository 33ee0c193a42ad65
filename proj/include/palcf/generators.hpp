#pragma once

#include <string>
#include <utility>
#include <vector>

#include "palcf/interval.hpp"
#include "palcf/word.hpp"

namespace palcf {

// Parity word on letters {a, b}: position i (1-based) carries a when the
// binary digit sum of i is odd, b otherwise. Requires a != b, both >= 1.
Word thue_morse_word(const Int& a, const Int& b, size_t n);

// Alternating-run word a^l1 b^l2 a^l3 b^l4 ... Run lengths come either from
// an explicit list or from the growth rule l_{k+1} = ceil(gamma * l_k).
struct BakerSpec {
  Int a, b;
  std::vector<Int> lambdas;  // explicit run lengths (used when has_growth is false)
  bool has_growth = false;
  Rat gamma;  // >= 1
  Int seed;   // >= 1
};

void validate_baker_spec(const BakerSpec& spec);

// First `count` run lengths. Throws std::invalid_argument when an explicit
// list is exhausted before `count`.
std::vector<Int> baker_run_lengths(const BakerSpec& spec, size_t count);

// First n_symbols symbols. Throws when the explicit run list cannot cover n.
Word baker_word(const BakerSpec& spec, size_t n_symbols);

// Run k (1-based) occupies positions start..end, clipped to max_symbols.
struct RunBlock {
  size_t k;
  Int letter;
  size_t start, end;
};
inline bool operator==(const RunBlock& a, const RunBlock& b) {
  return a.k == b.k && a.letter == b.letter && a.start == b.start && a.end == b.end;
}
std::vector<RunBlock> baker_run_blocks(const BakerSpec& spec, size_t max_symbols);

// Maximal constant runs of an arbitrary word, as 1-based [start, end] blocks.
std::vector<RunBlock> runs_of(const Word& w);

// An approximation-order function phi with Psi(x) = x^2 phi(x) non-increasing.
// Two backends:
//   power:  phi(x) = c x^(-s) with c > 0, s > 2; all Psi comparisons are
//           decided exactly in rational arithmetic.
//   table:  finitely many sample points (x_i, phi(x_i)), x ascending; queries
//           are answered conservatively through the monotonicity of Psi, and
//           running past the last sample throws std::domain_error.
class ApproxOrderFunction {
 public:
  static ApproxOrderFunction power(const Rat& c, const Rat& s);
  static ApproxOrderFunction from_table(std::vector<std::pair<Rat, Rat>> points);

  // Certified Psi(x) <= t (never claims true unless provable).
  bool psi_at_most(const Rat& x, const Rat& t) const;
  // Certified Psi(x) > t.
  bool psi_greater(const Rat& x, const Rat& t) const;
  // ceil(1/Psi(q)), never below the true value. q >= 1.
  Int ceil_inv_psi(const Int& q) const;
  // Interval containing phi(x).
  RatInterval phi_enclosure(const Rat& x, unsigned bits) const;

  bool is_power() const { return kind_ == Kind::Power; }
  std::string describe() const;

 private:
  enum class Kind { Power, Table };
  Kind kind_ = Kind::Power;
  Rat c_, s_;
  std::vector<std::pair<Rat, Rat>> pts_;
  ApproxOrderFunction() = default;
};

// Palindrome-completion construction driven by phi. Stage 1 places the first
// large quotient b at the minimal admissible index n_1 >= 6; stage 2 picks the
// minimal n_2 > n_1, later stages the minimal n_{j+1} > 2 n_j, each subject to
// Psi((3/2)^(n-1)) <= 1/(10 b_prev) (1/10 for stage 1). After stage j >= 2 the
// word is completed to a palindrome of length 2 n_j - 1 by mirroring around
// the center. Each stage value is b_j = ceil(1/Psi(q_{n_j - 1})) computed from
// the word built so far; the construction enforces b_1 >= 10 and
// b_{j+1} >= 10 b_j and verifies every completion is palindromic.
struct Theorem5Stage {
  size_t n;
  Int b;
};
struct Theorem5State {
  Word word;
  std::vector<Theorem5Stage> stages;
  std::vector<size_t> completion_lengths;  // 2 n_j - 1 for j >= 2
  std::string phi_label;
};
Theorem5State theorem5_word(const ApproxOrderFunction& phi, size_t stage_count);

}  // namespace palcf
