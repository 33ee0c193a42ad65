#pragma once

#include <vector>

#include "palcf/interval.hpp"
#include "palcf/word.hpp"

namespace palcf {

// Convergent numerators/denominators of [0; a_1, a_2, ...]:
//   p_0 = 0, q_0 = 1,  p_l = a_l p_{l-1} + p_{l-2},  q_l likewise with q_{-1} = 0.
// Invariant: p_l q_{l-1} - p_{l-1} q_l = (-1)^(l-1), so gcd(p_l, q_l) = 1 and
// consecutive convergents bracket the value of every extension of the word.

struct ConvergentRow {
  Int p, q;
};

class ConvergentTable {
 public:
  explicit ConvergentTable(const Word& w);
  ConvergentTable(const Word& w, size_t upto);  // rows 0..min(upto, |w|)

  size_t depth() const { return rows_.size() - 1; }
  const Int& p(size_t l) const;
  const Int& q(size_t l) const;
  Rat value(size_t l) const;  // p_l / q_l, l >= 1

 private:
  std::vector<ConvergentRow> rows_;
};

// Streaming form of the same recurrence; O(1) state, allocation-free steps.
// Supports snapshot/restore so a long scan can be checkpointed and resumed.
class ConvergentScanner {
 public:
  ConvergentScanner() : p_cur_(0), p_prev_(1), q_cur_(1), q_prev_(0), idx_(0) {}

  void advance(const Int& a);
  size_t index() const { return idx_; }
  const Int& p() const { return p_cur_; }
  const Int& q() const { return q_cur_; }
  const Int& p_prev() const { return p_prev_; }
  const Int& q_prev() const { return q_prev_; }

  void restore(size_t idx, Int p_cur, Int p_prev, Int q_cur, Int q_prev);

 private:
  Int p_cur_, p_prev_, q_cur_, q_prev_;
  size_t idx_;
};

// Continuant K(a_i, ..., a_j): denominator of the continued fraction built
// from that symbol range. K(empty) = 1. Symmetric under reversal.
Int continuant(const Word& w);
Int continuant(const Word& w, size_t i, size_t j);

// 2x2 matrix [[a,b],[c,d]]; the product of quotient matrices [[a_m,1],[1,0]]
// over m = i..j. For the full word the product is [[q_n, q_{n-1}], [p_n, p_{n-1}]].
// Built with a balanced product tree, which is the fast path for long ranges.
struct Mat2 {
  Int a, b, c, d;
};
Mat2 quotient_matrix_product(const Word& w, size_t i, size_t j);

// q_{l-1}/q_l, which equals the value of [0; a_l, a_{l-1}, ..., a_1].
// The equality is recomputed independently and enforced. Requires 2 <= l <= |w|.
Rat mirror_ratio(const Word& w, size_t l);

// K_k * K_{m-k} <= K_m <= 2 * K_k * K_{m-k} for a split at 1 <= k < m = |w|.
struct SandwichResult {
  Int lower, value, upper;
};
SandwichResult continuant_sandwich(const Word& w, size_t k);

// Interval bounded by consecutive convergents p_l/q_l and p_{l+1}/q_{l+1};
// contains the value of every infinite extension of the first l+1 symbols.
// Width is exactly 1/(q_l q_{l+1}). Requires 1 <= l <= |w| - 1.
RatInterval evaluate_interval(const Word& w, size_t l);
RatInterval evaluate_interval(const ConvergentTable& t, size_t l);

// x_m = q_m / q_{m-1} for m = 1..n; the telescoping product equals q_n, and
// x_m is the value of [a_m; a_{m-1}, ..., a_1].
std::vector<Rat> reversed_tail_values(const Word& w);

// Certificate that q_k >= theta^{k+1} / (2 sqrt 5) (theta the golden ratio),
// decided exactly in integers: with A = 4 q_k - F_{k+1} and L = 2 F_k + F_{k+1}
// the claim is equivalent to 5 A^2 >= L^2. margin = 5 A^2 - L^2.
struct GoldenBoundEvidence {
  size_t k;
  bool holds;
  Int margin;
};
std::vector<GoldenBoundEvidence> golden_lower_bound_check(const ConvergentTable& t);

}  // namespace palcf
