#include "palcf/numeric.hpp"

#include <cstring>
#include <stdexcept>

namespace palcf {

Rat make_rat(const Int& num, const Int& den) {
  if (sgn(den) == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Int int_pow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rat pow2(long k) {
  Rat r;
  if (k >= 0) {
    Int t;
    mpz_ui_pow_ui(t.get_mpz_t(), 2, static_cast<unsigned long>(k));
    r = t;
  } else {
    Int t;
    mpz_ui_pow_ui(t.get_mpz_t(), 2, static_cast<unsigned long>(-k));
    r = make_rat(1, t);
  }
  return r;
}

Int pow10(unsigned long k) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

Int isqrt_floor(const Int& n) {
  if (sgn(n) < 0) throw std::invalid_argument("isqrt_floor: negative operand");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int root_floor(const Int& n, unsigned long k) {
  if (sgn(n) < 0) throw std::invalid_argument("root_floor: negative operand");
  if (k == 0) throw std::invalid_argument("root_floor: zero degree");
  Int r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

Int ceil_div(const Int& a, const Int& b) {
  if (sgn(b) <= 0) throw std::invalid_argument("ceil_div: non-positive divisor");
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

size_t bit_length(const Int& n) {
  if (sgn(n) == 0) throw std::invalid_argument("bit_length: zero operand");
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

size_t digits10(const Int& n) {
  if (sgn(n) == 0) throw std::invalid_argument("digits10: zero operand");
  // mpz_sizeinbase may overestimate by one for non-power-of-two bases.
  size_t d = mpz_sizeinbase(n.get_mpz_t(), 10);
  if (d > 1 && abs(n) < pow10(d - 1)) --d;
  return d;
}

long floor_log2(const Rat& x) {
  if (sgn(x) <= 0) throw std::invalid_argument("floor_log2: non-positive operand");
  const Int num = x.get_num();
  const Int den = x.get_den();
  // x in [2^(e-1), 2^(e+1)) for e = bitlen(num) - bitlen(den).
  long e = static_cast<long>(bit_length(num)) - static_cast<long>(bit_length(den));
  // x >= 2^e  <=>  num >= den * 2^e.
  bool ge;
  if (e >= 0) {
    Int t = den << static_cast<unsigned long>(e);
    ge = num >= t;
  } else {
    Int t = num << static_cast<unsigned long>(-e);
    ge = t >= den;
  }
  return ge ? e : e - 1;
}

std::string to_sci(const Rat& x, unsigned sig) {
  if (sig < 1 || sig > 40) throw std::invalid_argument("to_sci: significant digits out of range");
  if (sgn(x) == 0) return "0";
  const bool neg = sgn(x) < 0;
  const Int num = abs(Int(x.get_num()));
  const Int den = x.get_den();
  const Int lo_bound = pow10(sig - 1);
  const Int hi_bound = pow10(sig);
  long e10 = static_cast<long>(digits10(num)) - static_cast<long>(digits10(den));
  for (int guard = 0; guard < 4; ++guard) {
    const long t = static_cast<long>(sig) - 1 - e10;
    Int m;
    if (t >= 0) {
      m = (num * pow10(static_cast<unsigned long>(t))) / den;
    } else {
      m = num / (den * pow10(static_cast<unsigned long>(-t)));
    }
    if (m >= hi_bound) {
      ++e10;
      continue;
    }
    if (m < lo_bound) {
      --e10;
      continue;
    }
    std::string digits = m.get_str();
    std::string out;
    if (neg) out += '-';
    out += digits[0];
    if (sig > 1) {
      out += '.';
      out += digits.substr(1);
    }
    out += 'e';
    out += (e10 >= 0) ? '+' : '-';
    long ae = e10 >= 0 ? e10 : -e10;
    std::string es = std::to_string(ae);
    if (es.size() < 2) es = "0" + es;
    out += es;
    return out;
  }
  throw std::logic_error("to_sci: exponent normalization failed");
}

Int parse_int(const std::string& s) {
  size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = (s[pos] == '-');
    ++pos;
  }
  if (pos >= s.size()) throw std::invalid_argument("parse_int: no digits in '" + s + "'");
  Int v(0);
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c < '0' || c > '9')
      throw std::invalid_argument("parse_int: non-digit in '" + s + "'");
    v *= 10;
    v += c - '0';
  }
  return neg ? Int(-v) : v;
}

Rat parse_rat(const std::string& s) {
  auto fail = [&]() {
    throw std::invalid_argument("parse_rat: malformed rational '" + s + "'");
  };
  if (s.empty()) fail();
  size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = (s[pos] == '-');
    ++pos;
  }
  auto digits_at = [&](size_t from, size_t to) -> std::string {
    if (from >= to) fail();
    for (size_t i = from; i < to; ++i)
      if (s[i] < '0' || s[i] > '9') fail();
    return s.substr(from, to - from);
  };
  const size_t slash = s.find('/', pos);
  Rat r;
  if (slash != std::string::npos) {
    const Int n = parse_int(digits_at(pos, slash));
    const Int d = parse_int(digits_at(slash + 1, s.size()));
    r = make_rat(n, d);
  } else {
    const size_t dot = s.find('.', pos);
    if (dot != std::string::npos) {
      const Int ip = parse_int(digits_at(pos, dot));
      const std::string fp = digits_at(dot + 1, s.size());
      const Int scale = pow10(fp.size());
      r = make_rat(ip * scale + parse_int(fp), scale);
    } else {
      r = Rat(parse_int(digits_at(pos, s.size())));
    }
  }
  if (neg) r = -r;
  return r;
}

uint64_t fnv1a64(const void* data, size_t len, uint64_t seed) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  return h;
}

uint64_t fnv1a64(const std::string& s, uint64_t seed) { return fnv1a64(s.data(), s.size(), seed); }

}  // namespace palcf
