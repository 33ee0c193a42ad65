#include "palcf/generators.hpp"

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "palcf/cf_core.hpp"
#include "palcf/enclose.hpp"
#include "palcf/numeric.hpp"

namespace palcf {

namespace {

// base^e as a rational, e >= 0.
Rat rat_pow(const Rat& base, unsigned long e) {
  if (e == 0) return Rat(1);
  return make_rat(int_pow(Int(base.get_num()), e), int_pow(Int(base.get_den()), e));
}

Rat three_halves_pow(size_t e) {
  return make_rat(int_pow(Int(3), e), int_pow(Int(2), e));
}

}  // namespace

Word thue_morse_word(const Int& a, const Int& b, size_t n) {
  if (a < 1 || b < 1) throw std::invalid_argument("thue_morse_word: letters must be >= 1");
  if (a == b) throw std::invalid_argument("thue_morse_word: letters must differ");
  Word w;
  w.symbols.reserve(n);
  for (size_t i = 1; i <= n; ++i)
    w.push(std::popcount(static_cast<uint64_t>(i)) % 2 == 1 ? a : b);
  return w;
}

void validate_baker_spec(const BakerSpec& spec) {
  if (spec.a < 1 || spec.b < 1)
    throw std::invalid_argument("baker word: letters must be >= 1");
  if (spec.a == spec.b) throw std::invalid_argument("baker word: letters must differ");
  if (spec.has_growth) {
    if (spec.gamma < 1) throw std::invalid_argument("baker word: growth factor must be >= 1");
    if (spec.seed < 1) throw std::invalid_argument("baker word: seed run length must be >= 1");
  } else {
    if (spec.lambdas.empty())
      throw std::invalid_argument("baker word: run length list must be non-empty");
    for (const Int& l : spec.lambdas)
      if (l < 1) throw std::invalid_argument("baker word: run lengths must be >= 1");
  }
}

std::vector<Int> baker_run_lengths(const BakerSpec& spec, size_t count) {
  validate_baker_spec(spec);
  std::vector<Int> out;
  out.reserve(count);
  if (spec.has_growth) {
    Int cur = spec.seed;
    const Int gnum = spec.gamma.get_num(), gden = spec.gamma.get_den();
    for (size_t k = 0; k < count; ++k) {
      out.push_back(cur);
      cur = ceil_div(gnum * cur, gden);
    }
  } else {
    if (count > spec.lambdas.size()) {
      std::ostringstream os;
      os << "baker word: " << count << " runs requested but only "
         << spec.lambdas.size() << " run lengths given";
      throw std::invalid_argument(os.str());
    }
    out.assign(spec.lambdas.begin(), spec.lambdas.begin() + count);
  }
  return out;
}

Word baker_word(const BakerSpec& spec, size_t n_symbols) {
  validate_baker_spec(spec);
  Word w;
  w.symbols.reserve(n_symbols);
  size_t k = 0;  // runs consumed so far
  Int cur = spec.has_growth ? spec.seed : Int(0);
  const Int gnum = spec.has_growth ? Int(spec.gamma.get_num()) : Int(0);
  const Int gden = spec.has_growth ? Int(spec.gamma.get_den()) : Int(1);
  while (w.size() < n_symbols) {
    Int len;
    if (spec.has_growth) {
      len = cur;
      cur = ceil_div(gnum * cur, gden);
    } else {
      if (k >= spec.lambdas.size()) {
        std::ostringstream os;
        os << "baker word: run length list exhausted after "
           << spec.lambdas.size() << " runs (" << w.size() << " of "
           << n_symbols << " symbols)";
        throw std::invalid_argument(os.str());
      }
      len = spec.lambdas[k];
    }
    const Int& letter = (k % 2 == 0) ? spec.a : spec.b;
    Int remaining(n_symbols - w.size());
    if (len > remaining) len = remaining;
    for (Int i = 0; i < len; ++i) w.push(letter);
    ++k;
  }
  return w;
}

std::vector<RunBlock> baker_run_blocks(const BakerSpec& spec, size_t max_symbols) {
  validate_baker_spec(spec);
  std::vector<RunBlock> out;
  size_t pos = 1;
  size_t k = 0;
  Int cur = spec.has_growth ? spec.seed : Int(0);
  const Int gnum = spec.has_growth ? Int(spec.gamma.get_num()) : Int(0);
  const Int gden = spec.has_growth ? Int(spec.gamma.get_den()) : Int(1);
  while (pos <= max_symbols) {
    Int len;
    if (spec.has_growth) {
      len = cur;
      cur = ceil_div(gnum * cur, gden);
    } else {
      if (k >= spec.lambdas.size()) break;
      len = spec.lambdas[k];
    }
    Int remaining(max_symbols - pos + 1);
    if (len > remaining) len = remaining;
    size_t l = len.get_ui();
    out.push_back({k + 1, (k % 2 == 0) ? spec.a : spec.b, pos, pos + l - 1});
    pos += l;
    ++k;
  }
  return out;
}

std::vector<RunBlock> runs_of(const Word& w) {
  std::vector<RunBlock> out;
  size_t i = 1;
  while (i <= w.size()) {
    size_t j = i;
    while (j < w.size() && w.at(j + 1) == w.at(i)) ++j;
    out.push_back({out.size() + 1, w.at(i), i, j});
    i = j + 1;
  }
  return out;
}

ApproxOrderFunction ApproxOrderFunction::power(const Rat& c, const Rat& s) {
  if (c <= 0) throw std::invalid_argument("approximation order: coefficient must be > 0");
  if (s <= 2) throw std::invalid_argument("approximation order: exponent must be > 2");
  ApproxOrderFunction f;
  f.kind_ = Kind::Power;
  f.c_ = c;
  f.s_ = s;
  return f;
}

ApproxOrderFunction ApproxOrderFunction::from_table(std::vector<std::pair<Rat, Rat>> points) {
  if (points.empty())
    throw std::invalid_argument("approximation order: table must be non-empty");
  Rat prev_psi;
  for (size_t i = 0; i < points.size(); ++i) {
    const auto& [x, phi] = points[i];
    if (x <= 0) throw std::invalid_argument("approximation order: table abscissae must be > 0");
    if (phi <= 0) throw std::invalid_argument("approximation order: table values must be > 0");
    if (i > 0 && x <= points[i - 1].first)
      throw std::invalid_argument("approximation order: table abscissae must be strictly increasing");
    Rat psi = x * x * phi;
    if (i > 0 && psi > prev_psi)
      throw std::invalid_argument("approximation order: x^2 phi(x) must be non-increasing");
    prev_psi = psi;
  }
  ApproxOrderFunction f;
  f.kind_ = Kind::Table;
  f.pts_ = std::move(points);
  return f;
}

bool ApproxOrderFunction::psi_at_most(const Rat& x, const Rat& t) const {
  if (x <= 0) throw std::domain_error("approximation order: argument must be > 0");
  if (t <= 0) return false;  // Psi is strictly positive
  if (kind_ == Kind::Power) {
    // Psi(x) = c x^(2-s) <= t  <=>  c^sr <= t^sr x^(su - 2 sr), exponents integral.
    const unsigned long sr = s_.get_den().get_ui();
    const Int e = Int(s_.get_num()) - 2 * Int(s_.get_den());  // su - 2 sr > 0
    return rat_pow(t, sr) * rat_pow(x, e.get_ui()) >= rat_pow(c_, sr);
  }
  // Largest sample x_i <= x certifies Psi(x) <= Psi(x_i).
  size_t i = pts_.size();
  while (i > 0 && pts_[i - 1].first > x) --i;
  if (i == 0)
    throw std::domain_error("approximation order: argument below table support");
  const auto& [xs, phis] = pts_[i - 1];
  return xs * xs * phis <= t;
}

bool ApproxOrderFunction::psi_greater(const Rat& x, const Rat& t) const {
  if (x <= 0) throw std::domain_error("approximation order: argument must be > 0");
  if (t <= 0) return true;
  if (kind_ == Kind::Power) {
    const unsigned long sr = s_.get_den().get_ui();
    const Int e = Int(s_.get_num()) - 2 * Int(s_.get_den());
    return rat_pow(t, sr) * rat_pow(x, e.get_ui()) < rat_pow(c_, sr);
  }
  // Smallest sample x_j >= x certifies Psi(x) >= Psi(x_j).
  size_t j = 0;
  while (j < pts_.size() && pts_[j].first < x) ++j;
  if (j == pts_.size()) {
    std::ostringstream os;
    os << "approximation order: table exhausted (no sample >= " << x.get_str() << ")";
    throw std::domain_error(os.str());
  }
  const auto& [xs, phis] = pts_[j];
  return xs * xs * phis > t;
}

Int ApproxOrderFunction::ceil_inv_psi(const Int& q) const {
  if (q < 1) throw std::domain_error("approximation order: argument must be >= 1");
  if (kind_ == Kind::Power) {
    // 1/Psi(q) = q^(s-2) cv/cu; minimal b with (b cu)^sr >= q^(su-2sr) cv^sr.
    const unsigned long sr = s_.get_den().get_ui();
    const Int e = Int(s_.get_num()) - 2 * Int(s_.get_den());
    const Int cu = c_.get_num(), cv = c_.get_den();
    const Int target = int_pow(q, e.get_ui()) * int_pow(cv, sr);
    auto holds = [&](const Int& b) { return int_pow(b * cu, sr) >= target; };
    Int b = ceil_div(root_floor(target, sr) + 1, cu);
    if (b < 1) b = 1;
    while (b > 1 && holds(b - 1)) --b;
    while (!holds(b)) ++b;
    return b;
  }
  // Smallest sample x_j >= q: Psi(q) >= Psi(x_j), so ceil(1/Psi(x_j)) is safe.
  size_t j = 0;
  while (j < pts_.size() && pts_[j].first < q) ++j;
  if (j == pts_.size()) {
    std::ostringstream os;
    os << "approximation order: table exhausted (no sample >= " << q.get_str() << ")";
    throw std::domain_error(os.str());
  }
  Rat psi = pts_[j].first * pts_[j].first * pts_[j].second;
  return ceil_div(Int(psi.get_den()), Int(psi.get_num()));
}

RatInterval ApproxOrderFunction::phi_enclosure(const Rat& x, unsigned bits) const {
  if (x <= 0) throw std::domain_error("approximation order: argument must be > 0");
  if (kind_ == Kind::Power) {
    // phi(x) = c / x^(su/sr).
    const unsigned long sr = s_.get_den().get_ui();
    const unsigned long su = Int(s_.get_num()).get_ui();
    RatInterval w = root_enclosure(rat_pow(x, su), sr, bits);
    return scale(recip(w), c_);
  }
  if (x < pts_.front().first || x > pts_.back().first)
    throw std::domain_error("approximation order: argument outside table support");
  size_t j = 0;
  while (pts_[j].first < x) ++j;
  if (pts_[j].first == x) return RatInterval(pts_[j].second);
  // x_i < x < x_j: Psi(x) lies between the bracketing Psi samples.
  const Rat psi_hi = pts_[j - 1].first * pts_[j - 1].first * pts_[j - 1].second;
  const Rat psi_lo = pts_[j].first * pts_[j].first * pts_[j].second;
  const Rat xx = x * x;
  return RatInterval(psi_lo / xx, psi_hi / xx);
}

std::string ApproxOrderFunction::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::Power)
    os << "power(c=" << c_.get_str() << ",s=" << s_.get_str() << ")";
  else
    os << "table(" << pts_.size() << " points)";
  return os.str();
}

Theorem5State theorem5_word(const ApproxOrderFunction& phi, size_t stage_count) {
  if (stage_count < 1)
    throw std::invalid_argument("palindrome completion: need at least one stage");
  if (stage_count > 16)
    throw std::invalid_argument("palindrome completion: stage count above 16 not supported");
  constexpr size_t kScanCap = 100000;

  Theorem5State st;
  st.phi_label = phi.describe();
  Word& w = st.word;
  size_t scan_start = 6;
  Rat threshold = make_rat(1, 10);

  for (size_t j = 1; j <= stage_count; ++j) {
    try {
      // Minimal admissible index with Psi((3/2)^(n-1)) <= threshold.
      size_t n = scan_start;
      while (n < scan_start + kScanCap && !phi.psi_at_most(three_halves_pow(n - 1), threshold))
        ++n;
      if (n == scan_start + kScanCap) {
        std::ostringstream os;
        os << "palindrome completion: stage " << j
           << " threshold never satisfied within scan window";
        throw std::runtime_error(os.str());
      }
      if (phi.is_power() && n > scan_start &&
          !phi.psi_greater(three_halves_pow(n - 2), threshold))
        throw std::logic_error("stage index not minimal");
      for (size_t i = 1; i <= 3; ++i)  // Psi non-increasing: must keep holding
        if (!phi.psi_at_most(three_halves_pow(n - 1 + i), threshold))
          throw std::logic_error("threshold condition not stable past stage index");

      while (w.size() < n - 1) w.push(Int(1));
      ConvergentTable tab(w);
      Int b = phi.ceil_inv_psi(tab.q(n - 1));
      if (j == 1 && b < 10)
        throw std::logic_error("first stage value below 10");
      if (j > 1 && b < 10 * st.stages.back().b)
        throw std::logic_error("stage value failed to grow tenfold");
      w.push(b);
      st.stages.push_back({n, b});

      if (j >= 2) {
        // Complete to a palindrome of length 2n-1 by mirroring around index n.
        for (size_t i = n - 1; i >= 1; --i) w.push(w.at(i));
        const size_t len = 2 * n - 1;
        st.completion_lengths.push_back(len);
        for (size_t i = 1; i <= len; ++i)
          if (w.at(i) != w.at(len + 1 - i))
            throw std::logic_error("completion is not palindromic");
      }

      scan_start = (j == 1) ? n + 1 : 2 * n + 1;
      threshold = make_rat(1, 10 * b);
    } catch (const std::domain_error& e) {
      std::ostringstream os;
      os << "palindrome completion stalled at stage " << j << " (completed "
         << (j - 1) << "): " << e.what();
      throw std::runtime_error(os.str());
    }
  }
  return st;
}

}  // namespace palcf
