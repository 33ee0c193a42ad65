#pragma once

#include <vector>

#include "palcf/word.hpp"

namespace palcf {

// Prefix-structure detectors. All of them reason about symbol equality only,
// so internally the word is interned onto a dense small alphabet and scanned
// with Z-arrays; results are exact, not probabilistic.

// Mirror shell: d(s) = length of the longest common prefix of the word and
// the reversal of its length-s prefix, for s = 1..n. The length-s prefix is
// palindromic iff d(s) >= floor(s/2).
std::vector<size_t> mirror_shell(const Word& w);

// All n <= |w| whose prefix a_1..a_n is a palindrome, ascending.
std::vector<size_t> palindromic_prefix_lengths(const Word& w);

// A witness (r, u, v) records that the prefix of length r + 2u + v factors as
// W U V mirror(U) with |W| = r, |U| = u, |V| = v. r = 0 is the
// quasi-palindromic form, r >= 1 the offset form.
struct Witness {
  size_t r, u, v;
};
bool operator==(const Witness& a, const Witness& b);

struct FinderOptions {
  size_t u_min = 1;      // minimum |U|
  size_t r_budget = 0;   // offset finder: cap on r (0 = derive from wprime_min)
};

// Quasi-palindromic witnesses (r = 0) subject to v <= w_max * u. Returns one
// witness per distinct u (the one with smallest v), sorted by increasing u.
// Extending the word never removes or changes a returned witness; it can only
// append entries for new u.
std::vector<Witness> find_quasi_palindrome_witnesses(const Word& w, const Rat& w_max,
                                                     const FinderOptions& opt = {});

// Offset witnesses (r >= 1) subject to v <= w_max * u and u >= wprime_min * r.
// Per distinct u the winner has smallest v, then smallest r; sorted by
// increasing u. Same monotonicity under word extension as above.
std::vector<Witness> find_offset_witnesses(const Word& w, const Rat& w_max,
                                           const Rat& wprime_min, const FinderOptions& opt = {});

// Smallest (preperiod, period) in lexicographic order such that
// a_i = a_{i+p} for all preperiod < i <= n - p, requiring preperiod + 2p <= n
// so at least one full period actually repeats inside the scanned prefix.
// A miss refutes eventual periodicity only within the scanned bounds; it is
// never a proof of aperiodicity.
struct PeriodicityScan {
  bool found = false;
  size_t preperiod = 0;
  size_t period = 0;
  size_t prefix_scanned = 0;
  size_t max_preperiod = 0;
  size_t max_period = 0;
};
PeriodicityScan eventual_periodicity_scan(const Word& w, size_t max_preperiod,
                                          size_t max_period);

}  // namespace palcf
