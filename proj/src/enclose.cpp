#include "palcf/enclose.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace palcf {

namespace {

constexpr unsigned kGuardBits = 32;

// RAII wrapper for a single mpfr value.
class MpfrVal {
 public:
  explicit MpfrVal(unsigned prec) { mpfr_init2(v_, prec); }
  ~MpfrVal() { mpfr_clear(v_); }
  MpfrVal(const MpfrVal&) = delete;
  MpfrVal& operator=(const MpfrVal&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Exact rational value of a finite mpfr number (z * 2^e).
Rat rat_of_mpfr(mpfr_ptr f) {
  if (mpfr_zero_p(f)) return Rat(0);
  if (!mpfr_number_p(f)) throw std::logic_error("rat_of_mpfr: non-finite value");
  Int z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), f);
  Rat r(z);
  return r * pow2(static_cast<long>(e));
}

// One directed-rounding chain: set x, apply op, extract exact endpoint.
template <typename Op>
Rat directed(const Rat& x, unsigned prec, mpfr_rnd_t rnd, Op op) {
  MpfrVal v(prec);
  mpfr_set_q(v.get(), x.get_mpq_t(), rnd);
  op(v.get(), rnd);
  return rat_of_mpfr(v.get());
}

}  // namespace

RatInterval log_enclosure(const Rat& x, unsigned bits) {
  if (sgn(x) <= 0) throw std::invalid_argument("log_enclosure: non-positive operand");
  if (x == 1) return RatInterval(Rat(0));
  const unsigned prec = bits + kGuardBits;
  auto apply = [](mpfr_ptr v, mpfr_rnd_t rnd) { mpfr_log(v, v, rnd); };
  Rat lo = directed(x, prec, MPFR_RNDD, apply);
  Rat hi = directed(x, prec, MPFR_RNDU, apply);
  return {lo, hi};
}

RatInterval log_enclosure(const RatInterval& x, unsigned bits) {
  if (sgn(x.lo) <= 0) throw std::invalid_argument("log_enclosure: interval touches zero");
  return {log_enclosure(x.lo, bits).lo, log_enclosure(x.hi, bits).hi};
}

RatInterval sqrt_enclosure(const Rat& x, unsigned bits) {
  if (sgn(x) < 0) throw std::invalid_argument("sqrt_enclosure: negative operand");
  if (sgn(x) == 0) return RatInterval(Rat(0));
  // sqrt(u/v) = sqrt(u*v)/v. With s = floor(sqrt(u*v*4^k)) the exact root
  // lies in [s, s+1] / (2^k * v), width 2^-k / v.
  const Int u = x.get_num();
  const Int v = x.get_den();
  const unsigned long k = bits;
  Int scaled = (u * v) << (2 * k);
  Int s = isqrt_floor(scaled);
  Int den = v << k;
  if (s * s == scaled) return RatInterval(make_rat(s, den));
  return {make_rat(s, den), make_rat(s + 1, den)};
}

RatInterval sqrt_enclosure(const RatInterval& x, unsigned bits) {
  return {sqrt_enclosure(x.lo, bits).lo, sqrt_enclosure(x.hi, bits).hi};
}

RatInterval root_enclosure(const Rat& x, unsigned long k, unsigned bits) {
  if (sgn(x) <= 0) throw std::invalid_argument("root_enclosure: non-positive operand");
  if (k == 0) throw std::invalid_argument("root_enclosure: zero degree");
  if (k == 1) return RatInterval(x);
  if (k == 2) return sqrt_enclosure(x, bits);
  // exp(log(x)/k) with directed rounding end to end. Far cheaper than integer
  // k-th roots when x is a large convergent denominator and k is the index.
  const unsigned prec = bits + kGuardBits;
  auto apply = [k](mpfr_ptr v, mpfr_rnd_t rnd) {
    mpfr_log(v, v, rnd);
    mpfr_div_ui(v, v, k, rnd);
    mpfr_exp(v, v, rnd);
  };
  Rat lo = directed(x, prec, MPFR_RNDD, apply);
  Rat hi = directed(x, prec, MPFR_RNDU, apply);
  if (lo > hi) throw std::logic_error("root_enclosure: rounding direction violated");
  return {lo, hi};
}

RatInterval exp_enclosure(const Rat& x, unsigned bits) {
  const unsigned prec = bits + kGuardBits;
  auto apply = [](mpfr_ptr v, mpfr_rnd_t rnd) { mpfr_exp(v, v, rnd); };
  Rat lo = directed(x, prec, MPFR_RNDD, apply);
  Rat hi = directed(x, prec, MPFR_RNDU, apply);
  return {lo, hi};
}

RatInterval golden_ratio(unsigned bits) {
  RatInterval s5 = sqrt_enclosure(Rat(5), bits + 2);
  return scale(s5 + RatInterval(Rat(1)), Rat(1, 2));
}

RatInterval metallic_ratio(const Int& m, unsigned bits) {
  if (sgn(m) <= 0) throw std::invalid_argument("metallic_ratio: need m >= 1");
  RatInterval s = sqrt_enclosure(Rat(m * m + 4), bits + 2);
  return scale(s + RatInterval(Rat(m)), Rat(1, 2));
}

RatInterval sqrt2_enclosure(unsigned bits) { return sqrt_enclosure(Rat(2), bits); }

RatInterval matched_tail_budget(unsigned bits) {
  RatInterval s5 = sqrt_enclosure(Rat(5), bits + 6);
  return scale(s5, Rat(20)) - RatInterval(Rat(40));
}

}  // namespace palcf
