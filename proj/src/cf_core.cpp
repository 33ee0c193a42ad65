#include "palcf/cf_core.hpp"

#include <stdexcept>

namespace palcf {

namespace {

void require_nonempty(const Word& w, const char* who) {
  if (w.empty()) throw std::invalid_argument(std::string(who) + ": empty word");
}

}  // namespace

ConvergentTable::ConvergentTable(const Word& w) : ConvergentTable(w, w.size()) {}

ConvergentTable::ConvergentTable(const Word& w, size_t upto) {
  require_nonempty(w, "ConvergentTable");
  validate_word(w);
  const size_t n = upto < w.size() ? upto : w.size();
  rows_.reserve(n + 1);
  rows_.push_back({Int(0), Int(1)});
  Int p_prev(1), q_prev(0);  // virtual row -1
  for (size_t l = 1; l <= n; ++l) {
    const Int& a = w.at(l);
    // rows_[l] = a * rows_[l-1] + rows_[l-2]
    mpz_addmul(p_prev.get_mpz_t(), a.get_mpz_t(), rows_.back().p.get_mpz_t());
    mpz_addmul(q_prev.get_mpz_t(), a.get_mpz_t(), rows_.back().q.get_mpz_t());
    rows_.push_back({p_prev, q_prev});
    p_prev = rows_[rows_.size() - 2].p;
    q_prev = rows_[rows_.size() - 2].q;
  }
}

const Int& ConvergentTable::p(size_t l) const {
  if (l >= rows_.size()) throw std::out_of_range("ConvergentTable::p: index beyond depth");
  return rows_[l].p;
}

const Int& ConvergentTable::q(size_t l) const {
  if (l >= rows_.size()) throw std::out_of_range("ConvergentTable::q: index beyond depth");
  return rows_[l].q;
}

Rat ConvergentTable::value(size_t l) const {
  if (l < 1) throw std::invalid_argument("ConvergentTable::value: need l >= 1");
  return make_rat(p(l), q(l));
}

void ConvergentScanner::advance(const Int& a) {
  if (sgn(a) <= 0) throw std::invalid_argument("ConvergentScanner::advance: non-positive symbol");
  // prev += a * cur, then swap: zero-allocation steady state.
  mpz_addmul(p_prev_.get_mpz_t(), a.get_mpz_t(), p_cur_.get_mpz_t());
  mpz_addmul(q_prev_.get_mpz_t(), a.get_mpz_t(), q_cur_.get_mpz_t());
  std::swap(p_prev_, p_cur_);
  std::swap(q_prev_, q_cur_);
  ++idx_;
}

void ConvergentScanner::restore(size_t idx, Int p_cur, Int p_prev, Int q_cur, Int q_prev) {
  idx_ = idx;
  p_cur_ = std::move(p_cur);
  p_prev_ = std::move(p_prev);
  q_cur_ = std::move(q_cur);
  q_prev_ = std::move(q_prev);
}

Int continuant(const Word& w) { return continuant(w, 1, w.size()); }

Int continuant(const Word& w, size_t i, size_t j) {
  if (i > j) return Int(1);
  if (i < 1 || j > w.size()) throw std::out_of_range("continuant: range outside word");
  ConvergentScanner sc;
  for (size_t m = i; m <= j; ++m) sc.advance(w.at(m));
  return sc.q();
}

namespace {

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

Mat2 mat_range(const Word& w, size_t i, size_t j) {
  if (i == j) return {w.at(i), Int(1), Int(1), Int(0)};
  const size_t mid = i + (j - i) / 2;
  return mat_mul(mat_range(w, i, mid), mat_range(w, mid + 1, j));
}

}  // namespace

Mat2 quotient_matrix_product(const Word& w, size_t i, size_t j) {
  if (i > j) return {Int(1), Int(0), Int(0), Int(1)};
  if (i < 1 || j > w.size())
    throw std::out_of_range("quotient_matrix_product: range outside word");
  return mat_range(w, i, j);
}

Rat mirror_ratio(const Word& w, size_t l) {
  require_nonempty(w, "mirror_ratio");
  if (l < 2 || l > w.size())
    throw std::invalid_argument("mirror_ratio: need 2 <= l <= word length");
  ConvergentScanner sc;
  for (size_t m = 1; m <= l; ++m) sc.advance(w.at(m));
  Rat ratio = make_rat(sc.q_prev(), sc.q());
  // Independent route: evaluate [0; a_l, ..., a_1] by back-substitution.
  Rat v(0);
  for (size_t m = 1; m <= l; ++m) v = Rat(1) / (Rat(w.at(m)) + v);
  if (v != ratio) throw std::logic_error("mirror_ratio: reversed evaluation mismatch");
  return ratio;
}

SandwichResult continuant_sandwich(const Word& w, size_t k) {
  require_nonempty(w, "continuant_sandwich");
  const size_t m = w.size();
  if (k < 1 || k >= m)
    throw std::invalid_argument("continuant_sandwich: need 1 <= k < word length");
  SandwichResult r;
  Int left = continuant(w, 1, k);
  Int right = continuant(w, k + 1, m);
  r.lower = left * right;
  r.value = continuant(w);
  r.upper = 2 * r.lower;
  if (r.value < r.lower || r.value > r.upper)
    throw std::logic_error("continuant_sandwich: split bounds violated");
  return r;
}

RatInterval evaluate_interval(const Word& w, size_t l) {
  require_nonempty(w, "evaluate_interval");
  if (l < 1 || l + 1 > w.size())
    throw std::invalid_argument("evaluate_interval: need 1 <= l <= word length - 1");
  ConvergentScanner sc;
  for (size_t m = 1; m <= l + 1; ++m) sc.advance(w.at(m));
  Rat v1 = make_rat(sc.p_prev(), sc.q_prev());
  Rat v2 = make_rat(sc.p(), sc.q());
  return v1 <= v2 ? RatInterval(v1, v2) : RatInterval(v2, v1);
}

RatInterval evaluate_interval(const ConvergentTable& t, size_t l) {
  if (l < 1 || l + 1 > t.depth())
    throw std::invalid_argument("evaluate_interval: need 1 <= l <= depth - 1");
  Rat v1 = t.value(l);
  Rat v2 = t.value(l + 1);
  return v1 <= v2 ? RatInterval(v1, v2) : RatInterval(v2, v1);
}

std::vector<Rat> reversed_tail_values(const Word& w) {
  require_nonempty(w, "reversed_tail_values");
  ConvergentScanner sc;
  std::vector<Rat> xs;
  xs.reserve(w.size());
  for (size_t m = 1; m <= w.size(); ++m) {
    sc.advance(w.at(m));
    xs.push_back(make_rat(sc.q(), sc.q_prev()));
  }
  return xs;
}

std::vector<GoldenBoundEvidence> golden_lower_bound_check(const ConvergentTable& t) {
  std::vector<GoldenBoundEvidence> out;
  out.reserve(t.depth());
  Int f_k(1), f_k1(1);  // F_k, F_{k+1} starting at k = 1
  for (size_t k = 1; k <= t.depth(); ++k) {
    const Int& qk = t.q(k);
    Int a = 4 * qk - f_k1;
    Int l = 2 * f_k + f_k1;
    Int margin = 5 * a * a - l * l;
    out.push_back({k, sgn(margin) >= 0, margin});
    Int f_next = f_k + f_k1;
    f_k = f_k1;
    f_k1 = f_next;
  }
  return out;
}

}  // namespace palcf
