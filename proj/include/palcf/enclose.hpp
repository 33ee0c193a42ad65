#pragma once

#include "palcf/interval.hpp"
#include "palcf/numeric.hpp"

namespace palcf {

// Certified enclosures of irrational quantities. Each function returns a
// rational interval guaranteed to contain the exact value; widths shrink as
// `bits` grows (roughly 2^-bits relative). Directed rounding underneath, so
// the guarantee is unconditional.

// ln(x), x > 0.
RatInterval log_enclosure(const Rat& x, unsigned bits);
// ln over an interval with lo > 0.
RatInterval log_enclosure(const RatInterval& x, unsigned bits);

// sqrt(x), x >= 0. Exact point interval when x is a perfect square.
RatInterval sqrt_enclosure(const Rat& x, unsigned bits);
RatInterval sqrt_enclosure(const RatInterval& x, unsigned bits);

// x^(1/k), x > 0, k >= 1.
RatInterval root_enclosure(const Rat& x, unsigned long k, unsigned bits);

// exp(x).
RatInterval exp_enclosure(const Rat& x, unsigned bits);

// (1 + sqrt(5)) / 2.
RatInterval golden_ratio(unsigned bits);

// Positive root of x^2 = m*x + 1, i.e. (m + sqrt(m^2 + 4)) / 2; the value of
// the periodic continued fraction [m; m, m, ...].
RatInterval metallic_ratio(const Int& m, unsigned bits);

RatInterval sqrt2_enclosure(unsigned bits);

// 20 * sqrt(5) - 40, the budget that caps the absolute log-sum deviation of a
// matched continued-fraction tail (see criteria on run/block log sums).
RatInterval matched_tail_budget(unsigned bits);

}  // namespace palcf
