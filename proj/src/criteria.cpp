#include "palcf/criteria.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <utility>

#include "palcf/enclose.hpp"

namespace palcf {

namespace {

long gap_log2(const Rat& gap) {
  if (sgn(gap) <= 0) return kNoMargin;
  return floor_log2(gap);
}

const TailSnapshot& find_row(const std::vector<TailSnapshot>& rows, size_t l) {
  auto it = std::lower_bound(rows.begin(), rows.end(), l,
                             [](const TailSnapshot& s, size_t v) { return s.l < v; });
  if (it == rows.end() || it->l != l)
    throw std::logic_error("criteria: snapshot for required index " + std::to_string(l) +
                           " missing");
  return *it;
}

// Evaluation depths tried in order when enclosures come out too wide: the
// deepest witness anchor plus a doubling tail margin, capped by the word.
std::vector<size_t> depth_ladder(size_t anchor_max, size_t len) {
  std::vector<size_t> v;
  for (size_t step = 64; step <= 512; step *= 2) v.push_back(std::min(len, anchor_max + step));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// At most 32 indices covering [lo, hi] with a fixed stride, hi always included.
std::vector<size_t> window_samples(size_t lo, size_t hi) {
  if (lo < 1) lo = 1;
  if (hi < lo) hi = lo;
  std::vector<size_t> v;
  size_t step = std::max<size_t>(1, (hi - lo) / 31);
  for (size_t l = lo; l < hi; l += step) v.push_back(l);
  v.push_back(hi);
  return v;
}

GrowthEstimate growth_common(const std::function<const Int&(size_t)>& q_at, size_t wlo,
                             size_t whi, unsigned bits) {
  GrowthEstimate g;
  g.window_lo = wlo;
  g.window_hi = whi;
  bool first = true;
  for (size_t l : window_samples(wlo, whi)) {
    const Int& q = q_at(l);
    RatInterval root = root_enclosure(Rat(q), l, bits);
    g.samples.emplace_back(l, root);
    if (first) {
      g.m_hat = root;
      g.M_hat = root;
      first = false;
    } else {
      g.m_hat.lo = std::min(g.m_hat.lo, root.lo);
      g.m_hat.hi = std::min(g.m_hat.hi, root.hi);
      g.M_hat.lo = std::max(g.M_hat.lo, root.lo);
      g.M_hat.hi = std::max(g.M_hat.hi, root.hi);
    }
    // Exact growth floors: q_l^2 >= 2^l and q_l >= (3/2)^l.
    if (l >= 3 && q * q < int_pow(Int(2), l)) g.sqrt2_floor_ok = false;
    if (l >= 5 && q * int_pow(Int(2), l) < int_pow(Int(3), l)) g.growth_floor_ok = false;
  }
  g.note = "samples=" + std::to_string(g.samples.size());
  return g;
}

GrowthEstimate growth_from_rows(const std::vector<TailSnapshot>& rows, size_t wlo, size_t whi,
                                unsigned bits) {
  return growth_common([&rows](size_t l) -> const Int& { return find_row(rows, l).q; }, wlo,
                       whi, bits);
}

EvidenceItem growth_info_item(const GrowthEstimate& g) {
  EvidenceItem it;
  it.label = "denominator growth window";
  it.n = -1;
  it.kind = EvidenceKind::Informational;
  it.lhs = to_sci(g.m_hat.lo);
  it.rhs = to_sci(g.M_hat.hi);
  it.status = (g.sqrt2_floor_ok && g.growth_floor_ok) ? EvidenceStatus::Satisfied
                                                      : EvidenceStatus::Violated;
  it.note = "window [" + std::to_string(g.window_lo) + ", " + std::to_string(g.window_hi) +
            "]; " + g.note +
            (it.status == EvidenceStatus::Satisfied ? "; growth floors hold"
                                                    : "; a growth floor failed");
  return it;
}

EvidenceItem no_witness_item(const std::string& which) {
  EvidenceItem it;
  it.label = "witness search";
  it.n = -1;
  it.kind = EvidenceKind::Hypothesis;
  it.status = EvidenceStatus::Inconclusive;
  it.lhs = "0";
  it.rhs = "1";
  it.note = "no " + which + " witnesses within the scanned prefix";
  return it;
}

bool any_undecided(const std::vector<EvidenceItem>& items) {
  return std::any_of(items.begin(), items.end(), [](const EvidenceItem& e) {
    return e.kind != EvidenceKind::Informational && e.status == EvidenceStatus::Inconclusive;
  });
}

void stamp_depth_note(std::vector<EvidenceItem>& items, size_t depth, size_t len) {
  for (auto& e : items) {
    if (e.kind == EvidenceKind::Informational || e.status != EvidenceStatus::Inconclusive)
      continue;
    if (!e.note.empty()) e.note += "; ";
    e.note += "enclosure at depth " + std::to_string(depth) + " of a " + std::to_string(len) +
              "-quotient prefix is too wide; extend the word or raise precision";
  }
}

// Exact integer sandwich lo <= x <= hi as a single item.
EvidenceItem make_int_sandwich(std::string label, long n, const Int& x, const Int& lo,
                               const Int& hi, std::string note) {
  EvidenceItem it;
  it.label = std::move(label);
  it.n = n;
  it.kind = EvidenceKind::TheoremBacked;
  it.note = std::move(note);
  it.lhs = to_sci(Rat(x));
  it.rhs = "[" + to_sci(Rat(lo)) + ", " + to_sci(Rat(hi)) + "]";
  bool ok = lo <= x && x <= hi;
  it.status = ok ? EvidenceStatus::Satisfied : EvidenceStatus::Violated;
  Int g1 = x - lo, g2 = hi - x;
  Int worst = ok ? (g1 < g2 ? g1 : g2) : (g1 < 0 ? -g1 : -g2);
  it.margin_log2 = sgn(worst) > 0 ? floor_log2(Rat(worst)) : kNoMargin;
  return it;
}

}  // namespace

const char* to_string(EvidenceKind k) {
  switch (k) {
    case EvidenceKind::TheoremBacked: return "theorem-backed";
    case EvidenceKind::Hypothesis: return "hypothesis";
    case EvidenceKind::Informational: return "informational";
  }
  return "?";
}

const char* to_string(EvidenceStatus s) {
  switch (s) {
    case EvidenceStatus::Satisfied: return "satisfied";
    case EvidenceStatus::Violated: return "violated";
    case EvidenceStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* const kEvidenceDisclaimer =
    "Certificates cover the derived inequalities and combinatorial hypotheses on a finite "
    "prefix; no transcendence conclusion is made.";

int CriterionReport::exit_code() const {
  for (const auto& e : evidence)
    if (e.kind == EvidenceKind::TheoremBacked && e.status == EvidenceStatus::Violated) return 1;
  if (verdict.rfind("inconclusive", 0) == 0) return 2;
  return 0;
}

void derive_verdict(CriterionReport& r) {
  r.disclaimer = kEvidenceDisclaimer;
  const EvidenceItem* tb_viol = nullptr;
  const EvidenceItem* hyp_viol = nullptr;
  const EvidenceItem* undecided = nullptr;
  for (const auto& e : r.evidence) {
    if (e.kind == EvidenceKind::Informational) continue;
    if (e.status == EvidenceStatus::Violated) {
      if (e.kind == EvidenceKind::TheoremBacked) {
        if (!tb_viol) tb_viol = &e;
      } else if (!hyp_viol) {
        hyp_viol = &e;
      }
    } else if (e.status == EvidenceStatus::Inconclusive && !undecided) {
      undecided = &e;
    }
  }
  if (const EvidenceItem* v = tb_viol ? tb_viol : hyp_viol)
    r.verdict = "violated-at(" + std::to_string(v->n) + ")";
  else if (undecided)
    r.verdict = "inconclusive(" + undecided->label + ")";
  else
    r.verdict = "hypotheses-verified-up-to-prefix";
}

EvidenceItem make_less(std::string label, long n, const RatInterval& lhs, const RatInterval& rhs,
                       EvidenceKind kind, std::string note) {
  EvidenceItem it;
  it.label = std::move(label);
  it.n = n;
  it.kind = kind;
  it.note = std::move(note);
  if (lhs.hi < rhs.lo) {
    it.status = EvidenceStatus::Satisfied;
    it.lhs = to_sci(lhs.hi);
    it.rhs = to_sci(rhs.lo);
    it.margin_log2 = gap_log2(rhs.lo - lhs.hi);
  } else if (lhs.lo >= rhs.hi) {
    it.status = EvidenceStatus::Violated;
    it.lhs = to_sci(lhs.lo);
    it.rhs = to_sci(rhs.hi);
    it.margin_log2 = gap_log2(lhs.lo - rhs.hi);
  } else {
    it.status = EvidenceStatus::Inconclusive;
    it.lhs = to_sci(lhs.hi);
    it.rhs = to_sci(rhs.lo);
  }
  return it;
}

EvidenceItem make_geq(std::string label, long n, const RatInterval& lhs, const RatInterval& rhs,
                      EvidenceKind kind, std::string note) {
  EvidenceItem it;
  it.label = std::move(label);
  it.n = n;
  it.kind = kind;
  it.note = std::move(note);
  if (lhs.lo >= rhs.hi) {
    it.status = EvidenceStatus::Satisfied;
    it.lhs = to_sci(lhs.lo);
    it.rhs = to_sci(rhs.hi);
    it.margin_log2 = gap_log2(lhs.lo - rhs.hi);
  } else if (lhs.hi < rhs.lo) {
    it.status = EvidenceStatus::Violated;
    it.lhs = to_sci(lhs.hi);
    it.rhs = to_sci(rhs.lo);
    it.margin_log2 = gap_log2(rhs.lo - lhs.hi);
  } else {
    it.status = EvidenceStatus::Inconclusive;
    it.lhs = to_sci(lhs.lo);
    it.rhs = to_sci(rhs.hi);
  }
  return it;
}

EvidenceItem make_equal(std::string label, long n, const Rat& lhs, const Rat& rhs,
                        EvidenceKind kind, std::string note) {
  EvidenceItem it;
  it.label = std::move(label);
  it.n = n;
  it.kind = kind;
  it.lhs = to_sci(lhs);
  it.rhs = to_sci(rhs);
  it.note = note.empty() ? "exact comparison" : std::move(note);
  if (lhs == rhs) {
    it.status = EvidenceStatus::Satisfied;
    it.margin_log2 = 0;
  } else {
    it.status = EvidenceStatus::Violated;
    it.margin_log2 = gap_log2(lhs > rhs ? lhs - rhs : rhs - lhs);
  }
  return it;
}

std::vector<TailSnapshot> collect_snapshots(const Word& w, std::vector<size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!indices.empty() && (indices.front() < 1 || indices.back() > w.size()))
    throw std::out_of_range("collect_snapshots: index outside word");
  std::vector<TailSnapshot> out;
  out.reserve(indices.size());
  ConvergentScanner sc;
  size_t next = 0;
  for (size_t l = 1; l <= w.size() && next < indices.size(); ++l) {
    sc.advance(w.at(l));
    if (indices[next] == l) {
      out.push_back({l, sc.p(), sc.q(), sc.p_prev(), sc.q_prev()});
      ++next;
    }
  }
  return out;
}

RatInterval enclosure_from(const TailSnapshot& s) {
  Rat x = make_rat(s.p, s.q);
  Rat y = make_rat(s.p + s.p_prev, s.q + s.q_prev);
  return x <= y ? RatInterval(x, y) : RatInterval(y, x);
}

// --- Interest sets ---------------------------------------------------------

std::vector<size_t> theorem1_interest(const Word& w, size_t prefix_cap) {
  size_t L = std::min(prefix_cap, w.size());
  if (L == 0) return {};
  std::vector<size_t> out = palindromic_prefix_lengths(prefix(w, L));
  size_t mx = out.empty() ? 1 : out.back();
  for (size_t d : depth_ladder(mx, w.size())) out.push_back(d);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void push_growth_windows(std::vector<size_t>& out, size_t L, size_t len) {
  if (L < 3) return;
  for (size_t l : window_samples(std::max<size_t>(3, L / 2), L))
    if (l >= 1 && l <= len) out.push_back(l);
  for (size_t l : window_samples(std::max<size_t>(3, L / 4), L))
    if (l >= 1 && l <= len) out.push_back(l);
}

}  // namespace

std::vector<size_t> theorem2_interest(const Word& w, const Rat& w_max, size_t prefix_cap,
                                      size_t u_min) {
  size_t L = std::min(prefix_cap, w.size());
  if (L == 0) return {};
  FinderOptions opt;
  opt.u_min = u_min;
  auto wits = find_quasi_palindrome_witnesses(prefix(w, L), w_max, opt);
  if (wits.empty()) return {};
  std::vector<size_t> out;
  size_t mx = 0;
  for (const Witness& x : wits) {
    size_t s = 2 * x.u + x.v;
    out.push_back(x.u);
    out.push_back(s);
    mx = std::max(mx, s);
  }
  for (size_t d : depth_ladder(mx, w.size())) out.push_back(d);
  push_growth_windows(out, L, w.size());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<size_t> theorem3_interest(const Word& w, const Rat& w_max, const Rat& wprime_min,
                                      size_t prefix_cap, size_t u_min) {
  size_t L = std::min(prefix_cap, w.size());
  if (L == 0) return {};
  FinderOptions opt;
  opt.u_min = u_min;
  auto wits = find_offset_witnesses(prefix(w, L), w_max, wprime_min, opt);
  if (wits.empty()) return {};
  std::vector<size_t> out;
  size_t mx = 0;
  for (const Witness& x : wits) {
    size_t s = x.r + x.u;
    size_t t = x.r + 2 * x.u + x.v;
    out.push_back(x.r);
    out.push_back(s);
    out.push_back(t);
    mx = std::max(mx, t);
  }
  for (size_t d : depth_ladder(mx, w.size())) out.push_back(d);
  push_growth_windows(out, L, w.size());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// --- Palindromic-prefix checker --------------------------------------------

CriterionReport theorem1_core(const Word& w, size_t prefix_cap, unsigned precision_bits,
                              const std::vector<TailSnapshot>& rows) {
  if (w.empty()) throw std::invalid_argument("theorem1_core: empty word");
  CriterionReport r;
  r.criterion = "thm1";
  r.precision_bits = precision_bits;
  size_t L = std::min(prefix_cap, w.size());
  r.prefix_len = L;
  std::vector<size_t> pals = palindromic_prefix_lengths(prefix(w, L));
  const Int& a1 = w.at(1);
  Int sym_cut = (a1 + 3) * (a1 + 3);

  size_t mx = pals.empty() ? 1 : pals.back();
  std::vector<size_t> ladder = depth_ladder(mx, w.size());
  size_t used_depth = 0;
  for (size_t d : ladder) {
    used_depth = d;
    RatInterval alpha = enclosure_from(find_row(rows, d));
    RatInterval alpha2 = square(alpha);
    std::vector<EvidenceItem> items;
    for (size_t n : pals) {
      const TailSnapshot& rn = find_row(rows, n);
      items.push_back(make_equal("palindromic prefix numerator symmetry",
                                 static_cast<long>(n), Rat(rn.p), Rat(rn.q_prev),
                                 EvidenceKind::TheoremBacked));
      RatInterval d1 = abs_val(alpha - RatInterval(make_rat(rn.p, rn.q)));
      RatInterval d2 = abs_val(alpha2 - RatInterval(make_rat(rn.p_prev, rn.q)));
      RatInterval maxterm = max_elem(d1, d2);
      RatInterval bound(make_rat(a1 + 3, rn.q * rn.q));
      items.push_back(make_less("simultaneous approximation bound", static_cast<long>(n),
                                maxterm, bound, EvidenceKind::TheoremBacked));
      if (rn.q > sym_cut) {
        RatInterval cube = scale(square(maxterm), Rat(rn.q * rn.q * rn.q));
        std::string note;
        if (sgn(maxterm.hi) > 0 && maxterm.hi < 1) {
          RatInterval expo = (RatInterval(Rat(0)) - log_enclosure(maxterm.hi, precision_bits)) /
                             log_enclosure(Rat(rn.q), precision_bits);
          note = "approximation exponent at least " + to_sci(expo.lo, 6);
        }
        items.push_back(make_less("cube-exponent product below one", static_cast<long>(n), cube,
                                  RatInterval(Rat(1)), EvidenceKind::TheoremBacked, note));
      }
    }
    r.evidence = std::move(items);
    if (!any_undecided(r.evidence)) break;
  }
  if (any_undecided(r.evidence)) stamp_depth_note(r.evidence, used_depth, w.size());
  derive_verdict(r);
  return r;
}

CriterionReport theorem1_evidence(const Word& w, size_t prefix_cap, unsigned precision_bits) {
  return theorem1_core(w, prefix_cap, precision_bits,
                       collect_snapshots(w, theorem1_interest(w, prefix_cap)));
}

// --- Quasi-palindromic witness checker -------------------------------------

CriterionReport theorem2_core(const Word& w, const Rat& w_max, size_t prefix_cap,
                              unsigned precision_bits, size_t u_min,
                              const std::vector<TailSnapshot>& rows) {
  if (w.empty()) throw std::invalid_argument("theorem2_core: empty word");
  CriterionReport r;
  r.criterion = "thm2";
  r.precision_bits = precision_bits;
  size_t L = std::min(prefix_cap, w.size());
  r.prefix_len = L;
  FinderOptions opt;
  opt.u_min = u_min;
  r.witnesses = find_quasi_palindrome_witnesses(prefix(w, L), w_max, opt);
  if (r.witnesses.empty()) {
    r.evidence.push_back(no_witness_item("quasi-palindromic"));
    derive_verdict(r);
    return r;
  }

  size_t mx = 0;
  for (const Witness& x : r.witnesses) mx = std::max(mx, 2 * x.u + x.v);

  GrowthEstimate g;
  bool have_growth = L >= 3;
  if (have_growth) {
    g = growth_from_rows(rows, std::max<size_t>(3, L / 2), L, precision_bits);
    GrowthEstimate gq = growth_from_rows(rows, std::max<size_t>(3, L / 4), L, precision_bits);
    g.note += "; quarter-window m_hat >= " + to_sci(gq.m_hat.lo, 6) + ", M_hat <= " +
              to_sci(gq.M_hat.hi, 6);
  }

  std::vector<size_t> ladder = depth_ladder(mx, w.size());
  size_t used_depth = 0;
  for (size_t d : ladder) {
    used_depth = d;
    RatInterval alpha = enclosure_from(find_row(rows, d));
    std::vector<EvidenceItem> items;
    for (const Witness& x : r.witnesses) {
      size_t s = 2 * x.u + x.v;
      const TailSnapshot& ru = find_row(rows, x.u);
      const TailSnapshot& rs = find_row(rows, s);
      const Int& qs = rs.q;
      const Int& qs1 = rs.q_prev;
      Int qu2 = ru.q * ru.q;
      std::string note = "witness u=" + std::to_string(x.u) + " v=" + std::to_string(x.v);

      RatInterval refl = abs_val(scale(alpha, Rat(qs)) - RatInterval(Rat(qs1)));
      items.push_back(make_less("reflection distance bound", static_cast<long>(s), refl,
                                RatInterval(make_rat(qs, qu2)), EvidenceKind::TheoremBacked,
                                note));

      RatInterval f1 = abs_val(scale(alpha, Rat(qs)) - RatInterval(Rat(rs.p)));
      items.push_back(make_less("convergent quality at reflection index", static_cast<long>(s),
                                f1, RatInterval(make_rat(Int(1), qs)),
                                EvidenceKind::TheoremBacked, note));

      RatInterval f2 = abs_val(scale(alpha, Rat(qs1)) - RatInterval(Rat(rs.p_prev)));
      items.push_back(make_less("convergent quality before reflection index",
                                static_cast<long>(s - 1), f2,
                                RatInterval(make_rat(Int(1), qs1)), EvidenceKind::TheoremBacked,
                                note));

      RatInterval prod = f1 * f2 * refl * RatInterval(Rat(qs1));
      items.push_back(make_less("four-form product bound", static_cast<long>(s), prod,
                                RatInterval(make_rat(Int(1), qu2)), EvidenceKind::TheoremBacked,
                                note));
    }
    r.evidence = std::move(items);
    if (!any_undecided(r.evidence)) break;
  }
  if (any_undecided(r.evidence)) stamp_depth_note(r.evidence, used_depth, w.size());
  if (have_growth) {
    r.evidence.push_back(growth_info_item(g));
    r.growth = std::move(g);
  }
  derive_verdict(r);
  return r;
}

CriterionReport theorem2_evidence(const Word& w, const Rat& w_max, size_t prefix_cap,
                                  unsigned precision_bits, size_t u_min) {
  return theorem2_core(w, w_max, prefix_cap, precision_bits, u_min,
                       collect_snapshots(w, theorem2_interest(w, w_max, prefix_cap, u_min)));
}

// --- Offset witness checker -------------------------------------------------

CriterionReport theorem3_core(const Word& w, const Rat& w_max, const Rat& wprime_min,
                              size_t prefix_cap, unsigned precision_bits, size_t u_min,
                              const std::vector<TailSnapshot>& rows) {
  if (w.empty()) throw std::invalid_argument("theorem3_core: empty word");
  CriterionReport r;
  r.criterion = "thm3";
  r.precision_bits = precision_bits;
  size_t L = std::min(prefix_cap, w.size());
  r.prefix_len = L;
  FinderOptions opt;
  opt.u_min = u_min;
  r.witnesses = find_offset_witnesses(prefix(w, L), w_max, wprime_min, opt);
  if (r.witnesses.empty()) {
    r.evidence.push_back(no_witness_item("offset"));
    derive_verdict(r);
    return r;
  }

  // Composite word data per witness, independent of the evaluation depth.
  struct Composite {
    size_t s = 0, t = 0;
    Int Q, Qp, P, Pp;
    Int qr, qs, qt;
  };
  std::vector<Composite> comps;
  size_t mx = 0;
  for (const Witness& x : r.witnesses) {
    Composite c;
    c.s = x.r + x.u;
    c.t = x.r + 2 * x.u + x.v;
    mx = std::max(mx, c.t);
    Word comp = concat(prefix(w, c.t), mirror(prefix(w, x.r)));
    Mat2 m = quotient_matrix_product(comp, 1, comp.size());
    c.Q = m.a;
    c.Qp = m.b;
    c.P = m.c;
    c.Pp = m.d;
    c.qr = find_row(rows, x.r).q;
    c.qs = find_row(rows, c.s).q;
    c.qt = find_row(rows, c.t).q;
    comps.push_back(std::move(c));
  }

  GrowthEstimate g;
  bool have_growth = L >= 3;
  if (have_growth) {
    g = growth_from_rows(rows, std::max<size_t>(3, L / 2), L, precision_bits);
    GrowthEstimate gq = growth_from_rows(rows, std::max<size_t>(3, L / 4), L, precision_bits);
    g.note += "; quarter-window m_hat >= " + to_sci(gq.m_hat.lo, 6) + ", M_hat <= " +
              to_sci(gq.M_hat.hi, 6);
  }

  // Growth-threshold interval for the offset-ratio hypothesis.
  bool threshold_ok = false;
  RatInterval threshold;
  if (have_growth && g.m_hat.lo > 1) {
    threshold = scale(log_enclosure(g.M_hat, precision_bits), Rat(2)) /
                    log_enclosure(g.m_hat, precision_bits) -
                RatInterval(Rat(1));
    threshold_ok = true;
  }

  std::vector<size_t> ladder = depth_ladder(mx, w.size());
  size_t used_depth = 0;
  for (size_t d : ladder) {
    used_depth = d;
    RatInterval alpha = enclosure_from(find_row(rows, d));
    std::vector<EvidenceItem> items;
    for (size_t i = 0; i < r.witnesses.size(); ++i) {
      const Witness& x = r.witnesses[i];
      const Composite& c = comps[i];
      std::string note = "witness r=" + std::to_string(x.r) + " u=" + std::to_string(x.u) +
                         " v=" + std::to_string(x.v);

      items.push_back(make_int_sandwich("composite denominator within reflection sandwich",
                                        static_cast<long>(c.t), c.Q, c.qt * c.qr,
                                        2 * c.qt * c.qr, note));
      items.push_back(make_int_sandwich("composite denominator within square sandwich",
                                        static_cast<long>(c.t), c.Q, c.qs * c.qs, c.qt * c.qt,
                                        note));

      Int qt2 = c.qt * c.qt;
      Int qs2 = c.qs * c.qs;
      RatInterval f1 = abs_val(scale(alpha, Rat(c.Q)) - RatInterval(Rat(c.P)));
      items.push_back(make_less("composite convergent quality", static_cast<long>(c.t), f1,
                                RatInterval(make_rat(c.Q, qt2)), EvidenceKind::TheoremBacked,
                                note));
      RatInterval f2 = abs_val(scale(alpha, Rat(c.Qp)) - RatInterval(Rat(c.Pp)));
      items.push_back(make_less("previous composite convergent quality", static_cast<long>(c.t),
                                f2, RatInterval(make_rat(c.Qp, qt2)),
                                EvidenceKind::TheoremBacked, note));
      RatInterval f3 = abs_val(scale(alpha, Rat(c.Q)) - RatInterval(Rat(c.Qp)));
      items.push_back(make_less("composite reflection distance", static_cast<long>(c.t), f3,
                                RatInterval(make_rat(c.Q, qs2)), EvidenceKind::TheoremBacked,
                                note));
      RatInterval prod = f1 * f2 * f3 * RatInterval(Rat(c.Qp));
      items.push_back(make_less("composite four-form product", static_cast<long>(c.t), prod,
                                RatInterval(make_rat(int_pow(c.Q, 4), int_pow(c.qt, 4) * qs2)),
                                EvidenceKind::TheoremBacked, note));

      Rat ratio = make_rat(Int(x.u), Int(x.r));
      if (threshold_ok) {
        items.push_back(make_less(
            "offset ratio above growth threshold", static_cast<long>(c.t), threshold,
            RatInterval(ratio), EvidenceKind::Hypothesis,
            note + "; requires threshold < u/r = " + to_sci(ratio, 6)));
      } else {
        EvidenceItem it;
        it.label = "offset ratio above growth threshold";
        it.n = static_cast<long>(c.t);
        it.kind = EvidenceKind::Hypothesis;
        it.status = EvidenceStatus::Inconclusive;
        it.lhs = "?";
        it.rhs = to_sci(ratio, 6);
        it.note = note + "; growth window too shallow to bound the threshold";
        items.push_back(std::move(it));
      }
    }
    r.evidence = std::move(items);
    if (!any_undecided(r.evidence)) break;
  }
  if (any_undecided(r.evidence)) stamp_depth_note(r.evidence, used_depth, w.size());
  if (have_growth) {
    r.evidence.push_back(growth_info_item(g));
    r.growth = std::move(g);
  }
  derive_verdict(r);
  return r;
}

CriterionReport theorem3_evidence(const Word& w, const Rat& w_max, const Rat& wprime_min,
                                  size_t prefix_cap, unsigned precision_bits, size_t u_min) {
  return theorem3_core(
      w, w_max, wprime_min, prefix_cap, precision_bits, u_min,
      collect_snapshots(w, theorem3_interest(w, w_max, wprime_min, prefix_cap, u_min)));
}

// --- Run-length regime threshold and ratio scan -----------------------------

BakerThreshold baker_threshold(const Int& a, const Int& b, unsigned precision_bits) {
  if (a < 1 || b < 1) throw std::invalid_argument("baker_threshold: letters must be >= 1");
  if (a == b) throw std::invalid_argument("baker_threshold: letters must differ");
  Int small = a < b ? a : b;
  Int large = a < b ? b : a;
  unsigned bits = precision_bits;
  for (int attempt = 0; attempt < 4; ++attempt, bits *= 2) {
    BakerThreshold th;
    th.precision_bits = bits;
    th.alpha_small = metallic_ratio(small, bits);
    th.alpha_large = metallic_ratio(large, bits);
    th.rho = log_enclosure(th.alpha_large, bits) / log_enclosure(th.alpha_small, bits);
    RatInterval inner = scale(square(th.rho), Rat(8)) + RatInterval(Rat(1));
    th.bound = (RatInterval(Rat(1)) + sqrt_enclosure(inner, bits)) / scale(th.rho, Rat(2));
    th.sqrt2 = sqrt2_enclosure(bits);
    if (certainly_less(th.sqrt2, th.bound) && certainly_less(th.bound, RatInterval(Rat(2))))
      return th;
  }
  throw std::logic_error("baker_threshold: could not separate the bound from (sqrt2, 2)");
}

CriterionReport theorem4_ratio_scan(const BakerSpec& spec, size_t n_terms,
                                    unsigned precision_bits) {
  validate_baker_spec(spec);
  size_t count = spec.has_growth ? n_terms : std::min(n_terms, spec.lambdas.size());
  if (count < 2) throw std::invalid_argument("theorem4_ratio_scan: need at least 2 run lengths");
  std::vector<Int> lam = baker_run_lengths(spec, count);

  CriterionReport r;
  r.criterion = "thm4";
  r.prefix_len = lam.size();
  r.precision_bits = precision_bits;

  size_t min_idx = 1;
  Rat min_ratio;
  for (size_t n = 1; n < lam.size(); ++n) {
    const Int& l0 = lam[n - 1];
    const Int& l1 = lam[n];
    Rat ratio = make_rat(l1, l0);
    if (n == 1 || ratio < min_ratio) {
      min_ratio = ratio;
      min_idx = n;
    }
    EvidenceItem it;
    it.label = "squared run-length ratio above two";
    it.n = static_cast<long>(n);
    it.kind = EvidenceKind::Hypothesis;
    Rat sq = make_rat(l1 * l1, l0 * l0);
    it.lhs = to_sci(sq);
    it.rhs = to_sci(Rat(2));
    bool ok = sq > 2;
    it.status = ok ? EvidenceStatus::Satisfied : EvidenceStatus::Violated;
    it.margin_log2 = gap_log2(ok ? Rat(sq - 2) : Rat(2 - sq));
    it.note = "run lengths " + l0.get_str() + " -> " + l1.get_str();
    r.evidence.push_back(std::move(it));
  }

  {
    EvidenceItem it;
    it.label = "minimum run-length ratio";
    it.n = static_cast<long>(min_idx);
    it.kind = EvidenceKind::Informational;
    it.lhs = to_sci(min_ratio);
    it.rhs = "sqrt(2)";
    Rat sq = min_ratio * min_ratio;
    it.status = sq > 2 ? EvidenceStatus::Satisfied : EvidenceStatus::Violated;
    it.margin_log2 = gap_log2(sq > 2 ? Rat(sq - 2) : Rat(2 - sq));
    it.note = "squared minimum ratio versus two (exact)";
    r.evidence.push_back(std::move(it));
  }

  BakerThreshold th = baker_threshold(spec.a, spec.b, precision_bits);
  {
    EvidenceItem it;
    it.label = "minimum ratio versus regime threshold";
    it.n = static_cast<long>(min_idx);
    it.kind = EvidenceKind::Informational;
    it.lhs = to_sci(min_ratio);
    it.rhs = to_sci(th.bound.hi);
    RatInterval mr(min_ratio);
    if (certainly_greater(mr, th.bound)) {
      it.status = EvidenceStatus::Satisfied;
      it.margin_log2 = gap_log2(min_ratio - th.bound.hi);
    } else if (certainly_less(mr, th.bound)) {
      it.status = EvidenceStatus::Violated;
      it.margin_log2 = gap_log2(th.bound.lo - min_ratio);
    } else {
      it.status = EvidenceStatus::Inconclusive;
    }
    it.note = "threshold in [" + to_sci(th.bound.lo, 13) + ", " + to_sci(th.bound.hi, 13) +
              "] for letters " + spec.a.get_str() + ", " + spec.b.get_str();
    r.evidence.push_back(std::move(it));
  }
  derive_verdict(r);
  return r;
}

// --- Matched-tail block log sums --------------------------------------------

CriterionReport block_log_sums(const BakerSpec& spec, size_t stage, unsigned precision_bits) {
  validate_baker_spec(spec);
  if (stage < 2) throw std::invalid_argument("block_log_sums: need stage >= 2");
  const size_t n = stage;
  std::vector<Int> lam_int = baker_run_lengths(spec, 2 * n);
  // Block boundaries must be addressable as positions, so run lengths are
  // required to fit size_t here.
  std::vector<size_t> lam;
  for (const Int& v : lam_int) {
    if (!v.fits_ulong_p())
      throw std::invalid_argument("block_log_sums: run length too large to index");
    lam.push_back(v.get_ui());
  }

  std::vector<size_t> c(2 * n + 1, 0), dsum(n, 0), esum(n, 0);
  for (size_t k = 1; k <= 2 * n; ++k) c[k] = c[k - 1] + lam[k - 1];
  for (size_t j = 1; j < n; ++j) {
    dsum[j] = dsum[j - 1] + lam[2 * j - 1];  // even-run lengths
    esum[j] = esum[j - 1] + lam[2 * j - 2];  // odd-run lengths
  }
  const size_t rn = c[2 * n - 2];
  const size_t sn = rn + lam[2 * n - 2] + dsum[n - 1];
  if (sn > c[2 * n])
    throw std::invalid_argument(
        "block_log_sums: reflected blocks exceed the generated prefix (run growth too slow)");

  Word w = baker_word(spec, sn);
  ConvergentTable tab(w);
  std::vector<Rat> xs = reversed_tail_values(w);

  CriterionReport r;
  r.criterion = "lemma6";
  r.prefix_len = sn;
  r.precision_bits = precision_bits;

  RatInterval budget = matched_tail_budget(precision_bits);
  RatInterval log_a = log_enclosure(metallic_ratio(spec.a, precision_bits), precision_bits);
  RatInterval log_b = log_enclosure(metallic_ratio(spec.b, precision_bits), precision_bits);

  struct Block {
    const char* desc;
    size_t start, end;  // positions (start, end]
    size_t lambda;
    bool letter_a;
  };
  std::vector<Block> blocks;
  for (size_t j = 0; j + 1 < n; ++j) {
    blocks.push_back({"forward a-run", c[2 * j], c[2 * j + 1], lam[2 * j], true});
    blocks.push_back({"forward b-run", c[2 * j + 1], c[2 * j + 2], lam[2 * j + 1], false});
    blocks.push_back({"reflected a-run", rn + esum[j], rn + esum[j + 1], lam[2 * j], true});
    blocks.push_back({"reflected b-run", rn + lam[2 * n - 2] + dsum[j],
                      rn + lam[2 * n - 2] + dsum[j + 1], lam[2 * j + 1], false});
  }

  for (const Block& blk : blocks) {
    const RatInterval& log_fix = blk.letter_a ? log_a : log_b;
    RatInterval sum(Rat(0));
    RatInterval absum(Rat(0));
    for (size_t m = blk.start + 1; m <= blk.end; ++m) {
      RatInterval lx = log_enclosure(xs[m - 1], precision_bits);
      sum = sum + lx;
      absum = absum + abs_val(lx - log_fix);
    }
    RatInterval dev = abs_val(sum - scale(log_fix, Rat(static_cast<unsigned long>(blk.lambda))));
    std::string note = std::string(blk.desc) + " block, run length " +
                       std::to_string(blk.lambda) + ", positions " +
                       std::to_string(blk.start + 1) + ".." + std::to_string(blk.end);
    r.evidence.push_back(make_less("block log-sum deviation", static_cast<long>(blk.start + 1),
                                   dev, budget, EvidenceKind::TheoremBacked, note));
    r.evidence.push_back(make_less("matched-tail absolute log-sum",
                                   static_cast<long>(blk.start + 1), absum, budget,
                                   EvidenceKind::TheoremBacked, note));
  }

  Rat prod(1);
  for (size_t m = 1; m <= sn; ++m) prod *= xs[m - 1];
  r.evidence.push_back(make_equal("tail-value product equals prefix denominator",
                                  static_cast<long>(sn), prod, Rat(tab.q(sn)),
                                  EvidenceKind::TheoremBacked,
                                  "telescoping product over the full prefix"));
  derive_verdict(r);
  return r;
}

// --- Prescribed-approximation verification ----------------------------------

Word mutate_word(const Word& w, size_t idx, const Int& value) {
  if (idx < 1 || idx > w.size()) throw std::out_of_range("mutate_word: index outside word");
  if (value < 1) throw std::invalid_argument("mutate_word: quotient must be >= 1");
  Word out = w;
  out.symbols[idx - 1] = value;
  return out;
}

CriterionReport theorem5_verify(const Theorem5State& state, const ApproxOrderFunction& phi,
                                const Theorem5VerifyOptions& opt) {
  const size_t len = state.word.size();
  const size_t K = state.stages.size();
  if (K < 2) throw std::invalid_argument("theorem5_verify: need at least two stages");
  if (len == 0) throw std::invalid_argument("theorem5_verify: empty word");
  for (size_t j = 0; j < K; ++j) {
    size_t nj = state.stages[j].n;
    if (nj < 2 || nj > len)
      throw std::invalid_argument("theorem5_verify: stage position outside word");
    if (j > 0 && nj <= state.stages[j - 1].n)
      throw std::invalid_argument("theorem5_verify: stage positions not increasing");
  }

  const unsigned bits = opt.precision_bits;
  CriterionReport r;
  r.criterion = "thm5";
  r.prefix_len = len;
  r.precision_bits = bits;

  // Skip positions immediately before a stage boundary in the floor check.
  std::set<size_t> skip;
  for (const Theorem5Stage& st : state.stages) skip.insert(st.n - 1);

  Word eval_word;
  size_t cap_gap = 0;    // highest n for the two-sided gap items
  size_t cap_floor = 0;  // highest n for the off-checkpoint floor items
  std::string extension_note;
  if (!opt.word_is_authoritative) {
    try {
      Theorem5State ext = theorem5_word(phi, K + 1);
      if (ext.word.size() < len)
        throw std::logic_error("theorem5_verify: extension shorter than the given word");
      for (size_t i = 1; i <= len; ++i) {
        if (ext.word.at(i) != state.word.at(i))
          throw std::invalid_argument(
              "theorem5_verify: word does not match the construction; set "
              "word_is_authoritative to analyze it as given");
      }
      for (const Theorem5Stage& st : ext.stages) skip.insert(st.n - 1);
      eval_word = std::move(ext.word);
      cap_gap = len;
      cap_floor = len >= 1 ? len - 1 : 0;
    } catch (const std::runtime_error& e) {
      // The next stage may be out of reach (e.g. a tabulated target without
      // enough support). Fall back to the word as given.
      extension_note = std::string("construction extension unavailable (") + e.what() +
                       "); verified from the word alone";
    }
  }
  if (eval_word.empty()) {
    eval_word = state.word;
    cap_gap = len >= 1 ? len - 1 : 0;
    cap_floor = len >= 2 ? len - 2 : 0;
  }

  ConvergentTable tab(eval_word);
  // Mediant enclosure of every continuation of the full evaluation word.
  const size_t D = eval_word.size();
  RatInterval alpha = enclosure_from({D, tab.p(D), tab.q(D), tab.p(D - 1), tab.q(D - 1)});

  if (!extension_note.empty()) {
    EvidenceItem it;
    it.label = "construction extension";
    it.n = -1;
    it.kind = EvidenceKind::Informational;
    it.status = EvidenceStatus::Inconclusive;
    it.lhs = "-";
    it.rhs = "-";
    it.note = extension_note;
    r.evidence.push_back(std::move(it));
  }

  // Two-sided convergent gap at every index.
  for (size_t nn = 1; nn <= cap_gap; ++nn) {
    const Int& b_n = state.word.at(nn);
    const Int& qp = tab.q(nn - 1);
    RatInterval dist = abs_val(alpha - RatInterval(make_rat(tab.p(nn - 1), qp)));
    Rat lo_bound = make_rat(Int(1), qp * qp * (b_n + 2));
    Rat hi_bound = make_rat(Int(1), qp * qp * b_n);
    r.evidence.push_back(make_less("approximation gap above floor", static_cast<long>(nn),
                                   RatInterval(lo_bound), dist, EvidenceKind::TheoremBacked));
    r.evidence.push_back(make_less("approximation gap below ceiling", static_cast<long>(nn),
                                   dist, RatInterval(hi_bound), EvidenceKind::TheoremBacked));
  }

  // Target window at the stage checkpoints.
  for (const Theorem5Stage& st : state.stages) {
    const Int& qp = tab.q(st.n - 1);
    RatInterval dist = abs_val(alpha - RatInterval(make_rat(tab.p(st.n - 1), qp)));
    RatInterval target = phi.phi_enclosure(Rat(qp), bits);
    RatInterval floor_scaled =
        target / (RatInterval(Rat(1)) + scale(target, Rat(3) * Rat(qp) * Rat(qp)));
    std::string note = "checkpoint with stage value " + st.b.get_str();
    r.evidence.push_back(make_less("checkpoint gap above scaled floor",
                                   static_cast<long>(st.n), floor_scaled, dist,
                                   EvidenceKind::TheoremBacked, note));
    r.evidence.push_back(make_less("checkpoint gap below target", static_cast<long>(st.n), dist,
                                   target, EvidenceKind::TheoremBacked, note));
  }

  // Off-checkpoint floor: three times the target, from the second stage on.
  const size_t n2 = state.stages[1].n;
  for (size_t nn = n2; nn <= cap_floor; ++nn) {
    if (skip.count(nn)) continue;
    const Int& qn = tab.q(nn);
    RatInterval dist = abs_val(alpha - RatInterval(make_rat(tab.p(nn), qn)));
    RatInterval rhs = scale(phi.phi_enclosure(Rat(qn), bits), Rat(3));
    r.evidence.push_back(make_geq("off-checkpoint gap above three targets",
                                  static_cast<long>(nn), dist, rhs,
                                  EvidenceKind::TheoremBacked));
  }

  // Stage values recomputed from the word itself.
  if (opt.check_consistency) {
    for (const Theorem5Stage& st : state.stages) {
      Int expected = phi.ceil_inv_psi(tab.q(st.n - 1));
      r.evidence.push_back(make_equal("stage value matches inverse target",
                                      static_cast<long>(st.n), Rat(state.word.at(st.n)),
                                      Rat(expected), EvidenceKind::TheoremBacked,
                                      "recomputed from the word's convergents"));
    }
  }

  derive_verdict(r);
  return r;
}

// --- Public growth-exponent scan --------------------------------------------

GrowthEstimate growth_exponents(const ConvergentTable& table, GrowthWindow window,
                                unsigned precision_bits) {
  size_t depth = table.depth();
  if (depth == 0) throw std::invalid_argument("growth_exponents: empty table");
  size_t lo = window.lo, hi = window.hi;
  if (lo == 0 && hi == 0) {
    lo = std::max<size_t>(3, depth / 2);
    hi = depth;
    if (lo > hi) lo = hi;
  }
  if (lo < 1 || lo > hi || hi > depth)
    throw std::invalid_argument("growth_exponents: window out of range");
  return growth_common([&table](size_t l) -> const Int& { return table.q(l); }, lo, hi,
                       precision_bits);
}

}  // namespace palcf
