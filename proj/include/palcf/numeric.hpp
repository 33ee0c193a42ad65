#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace palcf {

// Arbitrary-precision integer and rational types used throughout the library.
// All arithmetic on these is exact; floating point never enters a verdict.
using Int = mpz_class;
using Rat = mpq_class;

// num/den reduced to lowest terms with den > 0. Throws if den == 0.
Rat make_rat(const Int& num, const Int& den);

// base^exp for exp >= 0.
Int int_pow(const Int& base, unsigned long exp);

// 2^k as an exact rational, k may be negative.
Rat pow2(long k);

// 10^k for k >= 0.
Int pow10(unsigned long k);

// floor(sqrt(n)), n >= 0.
Int isqrt_floor(const Int& n);

// floor(n^(1/k)), n >= 0, k >= 1.
Int root_floor(const Int& n, unsigned long k);

// ceil(a/b), b > 0.
Int ceil_div(const Int& a, const Int& b);

// Number of bits in |n|, n != 0.
size_t bit_length(const Int& n);

// Number of decimal digits in |n|, n != 0 (exact).
size_t digits10(const Int& n);

// floor(log2(x)) computed exactly, x > 0.
long floor_log2(const Rat& x);

// Deterministic scientific-notation rendering with `sig` significant digits,
// mantissa truncated toward zero. Example: to_sci(1/3, 5) == "3.3333e-01".
// Zero renders as "0". 1 <= sig <= 40.
std::string to_sci(const Rat& x, unsigned sig = 12);

// Strict base-10 integer parser: optional sign then digits only. Unlike the
// GMP string constructor there is no base auto-detection, so leading zeros
// are harmless. Throws std::invalid_argument otherwise.
Int parse_int(const std::string& s);

// Accepts "123", "-7/3", "1.5", "+0.25". Throws std::invalid_argument on
// malformed input or zero denominator.
Rat parse_rat(const std::string& s);

// FNV-1a 64-bit hash, used for content fingerprints in checkpoints.
uint64_t fnv1a64(const void* data, size_t len, uint64_t seed = 14695981039346656037ULL);
uint64_t fnv1a64(const std::string& s, uint64_t seed = 14695981039346656037ULL);

}  // namespace palcf
