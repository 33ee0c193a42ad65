#pragma once

#include <stdexcept>
#include <utility>

#include "palcf/numeric.hpp"

namespace palcf {

// Closed rational interval [lo, hi]. Every operation is outward-conservative:
// the result interval contains every value attainable from operand values.
// A comparison decided through an interval is therefore a proof, and an
// overlapping comparison is reported as such rather than guessed.
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(const Rat& point) : lo(point), hi(point) {}  // NOLINT(google-explicit-constructor)
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::logic_error("RatInterval: inverted endpoints");
  }

  bool is_point() const { return lo == hi; }
  Rat width() const { return hi - lo; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const RatInterval& other) const { return lo <= other.lo && other.hi <= hi; }
};

inline bool operator==(const RatInterval& a, const RatInterval& b) {
  return a.lo == b.lo && a.hi == b.hi;
}

inline RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

inline RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

inline RatInterval operator-(const RatInterval& a, const RatInterval& b) { return a + (-b); }

inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  Rat lo = c1, hi = c1;
  for (const Rat* c : {&c2, &c3, &c4}) {
    if (*c < lo) lo = *c;
    if (*c > hi) hi = *c;
  }
  return {lo, hi};
}

inline RatInterval square(const RatInterval& a) {
  if (sgn(a.lo) >= 0) return {a.lo * a.lo, a.hi * a.hi};
  if (sgn(a.hi) <= 0) return {a.hi * a.hi, a.lo * a.lo};
  Rat l2 = a.lo * a.lo, h2 = a.hi * a.hi;
  return {Rat(0), l2 > h2 ? l2 : h2};
}

inline RatInterval abs_val(const RatInterval& a) {
  if (sgn(a.lo) >= 0) return a;
  if (sgn(a.hi) <= 0) return -a;
  Rat m = -a.lo;
  if (a.hi > m) m = a.hi;
  return {Rat(0), m};
}

// Requires 0 outside [lo, hi].
inline RatInterval recip(const RatInterval& a) {
  if (sgn(a.lo) <= 0 && sgn(a.hi) >= 0)
    throw std::logic_error("recip: interval straddles zero");
  return {1 / a.hi, 1 / a.lo};
}

inline RatInterval operator/(const RatInterval& a, const RatInterval& b) { return a * recip(b); }

inline RatInterval scale(const RatInterval& a, const Rat& c) {
  if (sgn(c) >= 0) return {a.lo * c, a.hi * c};
  return {a.hi * c, a.lo * c};
}

// Envelope of max/min over all value pairs drawn from the operands.
inline RatInterval max_elem(const RatInterval& a, const RatInterval& b) {
  return {a.lo > b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}
inline RatInterval min_elem(const RatInterval& a, const RatInterval& b) {
  return {a.lo < b.lo ? a.lo : b.lo, a.hi < b.hi ? a.hi : b.hi};
}

inline RatInterval hull(const RatInterval& a, const RatInterval& b) {
  return {a.lo < b.lo ? a.lo : b.lo, a.hi > b.hi ? a.hi : b.hi};
}

// Three-way interval comparison. Below/Above are proofs; Overlap means the
// enclosures are too coarse to decide.
enum class Cmp { Below, Overlap, Above };

inline Cmp cmp(const RatInterval& a, const RatInterval& b) {
  if (a.hi < b.lo) return Cmp::Below;
  if (a.lo > b.hi) return Cmp::Above;
  return Cmp::Overlap;
}

inline bool certainly_less(const RatInterval& a, const RatInterval& b) {
  return cmp(a, b) == Cmp::Below;
}
inline bool certainly_greater(const RatInterval& a, const RatInterval& b) {
  return cmp(a, b) == Cmp::Above;
}

}  // namespace palcf
