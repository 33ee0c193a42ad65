#include "palcf/words.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

#include "palcf/numeric.hpp"

namespace palcf {

namespace {

constexpr size_t kNone = std::numeric_limits<size_t>::max();

// Dense relabeling: detectors only compare symbols for equality, and interning
// makes every later pass cheap flat-integer work regardless of symbol size.
std::vector<int32_t> intern(const Word& w) {
  std::map<Int, int32_t> ids;
  std::vector<int32_t> out;
  out.reserve(w.size());
  for (const Int& s : w.symbols) {
    auto [it, fresh] = ids.emplace(s, static_cast<int32_t>(ids.size()));
    (void)fresh;
    out.push_back(it->second);
  }
  return out;
}

// Classic Z-array: z[i] = LCP(S, S[i..]) for i >= 1, z[0] = |S|.
std::vector<size_t> z_array(const std::vector<int32_t>& s) {
  const size_t n = s.size();
  std::vector<size_t> z(n, 0);
  if (n == 0) return z;
  z[0] = n;
  size_t l = 0, r = 0;
  for (size_t i = 1; i < n; ++i) {
    if (i < r) z[i] = std::min(r - i, z[i - l]);
    while (i + z[i] < n && s[z[i]] == s[i + z[i]]) ++z[i];
    if (i + z[i] > r) {
      l = i;
      r = i + z[i];
    }
  }
  return z;
}

// d(s) for s = 1..n over pre-interned symbols (index 0 unused).
std::vector<size_t> shell_of_ids(const std::vector<int32_t>& ids) {
  const size_t n = ids.size();
  std::vector<size_t> d(n + 1, 0);
  if (n == 0) return d;
  std::vector<int32_t> cat;
  cat.reserve(2 * n + 1);
  cat.insert(cat.end(), ids.begin(), ids.end());
  cat.push_back(-1);  // sentinel, distinct from all interned ids (which are >= 0)
  cat.insert(cat.end(), ids.rbegin(), ids.rend());
  std::vector<size_t> z = z_array(cat);
  for (size_t s = 1; s <= n; ++s) {
    // reverse(prefix_s) starts at offset n - s of the reversed word
    d[s] = z[n + 1 + (n - s)];
  }
  return d;
}

// "Next uncovered index >= x" with path halving; used to hand each u to at
// most one successful scan position.
struct SkipSet {
  std::vector<size_t> nxt;
  explicit SkipSet(size_t n) : nxt(n + 2) {
    for (size_t i = 0; i < nxt.size(); ++i) nxt[i] = i;
  }
  size_t find(size_t x) {
    while (nxt[x] != x) {
      nxt[x] = nxt[nxt[x]];
      x = nxt[x];
    }
    return x;
  }
  void erase(size_t x) { nxt[x] = x + 1; }
};

// ceil(k * num / den) for the rational num/den >= 0 with den > 0.
size_t ceil_mul(size_t k, const Int& num, const Int& den) {
  Int r = ceil_div(Int(static_cast<unsigned long>(k)) * num, den);
  if (!r.fits_ulong_p()) throw std::overflow_error("ceil_mul: result exceeds size_t");
  return static_cast<size_t>(r.get_ui());
}

void check_ratio(const Rat& x, const char* who, bool strictly_positive) {
  if (sgn(x) < 0 || (strictly_positive && sgn(x) == 0))
    throw std::invalid_argument(std::string(who) + ": ratio bound out of range");
}

}  // namespace

bool operator==(const Witness& a, const Witness& b) {
  return a.r == b.r && a.u == b.u && a.v == b.v;
}

std::vector<size_t> mirror_shell(const Word& w) {
  std::vector<size_t> d = shell_of_ids(intern(w));
  return std::vector<size_t>(d.begin() + 1, d.end());  // 0-based view: d[s-1]
}

std::vector<size_t> palindromic_prefix_lengths(const Word& w) {
  const std::vector<int32_t> ids = intern(w);
  const std::vector<size_t> d = shell_of_ids(ids);
  std::vector<size_t> out;
  for (size_t s = 1; s <= w.size(); ++s)
    if (d[s] >= s / 2) out.push_back(s);
  return out;
}

std::vector<Witness> find_quasi_palindrome_witnesses(const Word& w, const Rat& w_max,
                                                     const FinderOptions& opt) {
  check_ratio(w_max, "find_quasi_palindrome_witnesses", false);
  if (opt.u_min < 1)
    throw std::invalid_argument("find_quasi_palindrome_witnesses: u_min must be >= 1");
  const size_t n = w.size();
  const std::vector<int32_t> ids = intern(w);
  const std::vector<size_t> d = shell_of_ids(ids);
  const Int wnum = w_max.get_num();
  const Int wden = w_max.get_den();
  // v <= w_max * u  <=>  s <= (2 + w_max) u  <=>  u >= s * den / (2 den + num)
  const Int stretched_den = 2 * wden + wnum;

  std::vector<size_t> best_v(n / 2 + 2, kNone);
  SkipSet open(n / 2 + 2);
  for (size_t s = 2 * opt.u_min; s <= n; ++s) {
    size_t u_hi = std::min(d[s], s / 2);
    size_t u_lo = std::max(opt.u_min, ceil_mul(s, wden, stretched_den));
    for (size_t u = open.find(u_lo); u <= u_hi; u = open.find(u + 1)) {
      best_v[u] = s - 2 * u;
      open.erase(u);
    }
  }
  std::vector<Witness> out;
  for (size_t u = opt.u_min; u < best_v.size(); ++u)
    if (best_v[u] != kNone) out.push_back({0, u, best_v[u]});
  return out;
}

std::vector<Witness> find_offset_witnesses(const Word& w, const Rat& w_max,
                                           const Rat& wprime_min, const FinderOptions& opt) {
  check_ratio(w_max, "find_offset_witnesses", false);
  check_ratio(wprime_min, "find_offset_witnesses", true);
  if (opt.u_min < 1) throw std::invalid_argument("find_offset_witnesses: u_min must be >= 1");
  const size_t n = w.size();
  const std::vector<int32_t> ids = intern(w);
  const Int wnum = w_max.get_num();
  const Int wden = w_max.get_den();
  const Int stretched_den = 2 * wden + wnum;
  const Int pnum = wprime_min.get_num();
  const Int pden = wprime_min.get_den();

  // r + 2u + v <= n and u >= wprime_min * r force r (1 + 2 wprime_min) <= n.
  size_t r_max = 0;
  {
    Int bound = (Int(static_cast<unsigned long>(n)) * pden) / (pden + 2 * pnum);
    r_max = bound.fits_ulong_p() ? static_cast<size_t>(bound.get_ui()) : n;
  }
  if (opt.r_budget > 0) r_max = std::min(r_max, opt.r_budget);
  r_max = std::min(r_max, n >= 2 ? n - 2 : 0);

  std::vector<size_t> best_v(n / 2 + 2, kNone);
  std::vector<size_t> best_r(n / 2 + 2, kNone);
  std::vector<int32_t> cat;
  std::vector<int32_t> rev(ids.rbegin(), ids.rend());
  for (size_t r = 1; r <= r_max; ++r) {
    // LCP of the suffix starting after W against every reversed prefix.
    cat.clear();
    cat.insert(cat.end(), ids.begin() + static_cast<long>(r), ids.end());
    cat.push_back(-1);
    cat.insert(cat.end(), rev.begin(), rev.end());
    const std::vector<size_t> z = z_array(cat);
    const size_t a_len = n - r;
    auto lcp_at = [&](size_t t) { return z[a_len + 1 + (n - t)]; };

    const size_t u_floor = std::max(opt.u_min, ceil_mul(r, pnum, pden));
    SkipSet open(n / 2 + 2);
    for (size_t t = r + 2 * u_floor; t <= n; ++t) {
      const size_t span = t - r;  // = 2u + v
      size_t u_hi = std::min(lcp_at(t), span / 2);
      size_t u_lo = std::max(u_floor, ceil_mul(span, wden, stretched_den));
      for (size_t u = open.find(u_lo); u <= u_hi; u = open.find(u + 1)) {
        const size_t v = span - 2 * u;
        if (best_v[u] == kNone || v < best_v[u] || (v == best_v[u] && r < best_r[u])) {
          best_v[u] = v;
          best_r[u] = r;
        }
        open.erase(u);
      }
    }
  }
  std::vector<Witness> out;
  for (size_t u = opt.u_min; u < best_v.size(); ++u)
    if (best_v[u] != kNone) out.push_back({best_r[u], u, best_v[u]});
  return out;
}

PeriodicityScan eventual_periodicity_scan(const Word& w, size_t max_preperiod,
                                          size_t max_period) {
  if (max_period < 1)
    throw std::invalid_argument("eventual_periodicity_scan: max_period must be >= 1");
  const size_t n = w.size();
  const std::vector<int32_t> ids = intern(w);
  PeriodicityScan res;
  res.prefix_scanned = n;
  res.max_preperiod = max_preperiod;
  res.max_period = max_period;
  for (size_t k = 0; k <= std::min(max_preperiod, n); ++k) {
    const size_t p_cap = std::min(max_period, (n - k) / 2);
    for (size_t p = 1; p <= p_cap; ++p) {
      bool ok = true;
      for (size_t i = k; i + p < n && ok; ++i)
        if (ids[i] != ids[i + p]) ok = false;
      if (ok) {
        res.found = true;
        res.preperiod = k;
        res.period = p;
        return res;
      }
    }
  }
  return res;
}

}  // namespace palcf
