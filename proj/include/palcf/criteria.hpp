#pragma once

#include <climits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "palcf/cf_core.hpp"
#include "palcf/generators.hpp"
#include "palcf/interval.hpp"
#include "palcf/word.hpp"
#include "palcf/words.hpp"

namespace palcf {

// Certified evidence for irrationality-measure criteria on a finite prefix.
//
// Every checker returns a CriterionReport: a list of evidence items, each a
// single inequality or identity decided with outward-rounded enclosures (or
// exact integer arithmetic). An item is never "approximately" satisfied: if
// the enclosures are too wide to decide, the item is Inconclusive and the
// checker escalates precision and enclosure depth before giving up.

enum class EvidenceKind {
  TheoremBacked,   // must hold whenever the inputs are well-formed; a
                   // violation means an internal inconsistency
  Hypothesis,      // combinatorial/growth assumption being tested; a
                   // violation is a legitimate negative verdict
  Informational,   // context only; never affects the verdict
};

enum class EvidenceStatus { Satisfied, Violated, Inconclusive };

const char* to_string(EvidenceKind k);
const char* to_string(EvidenceStatus s);

// margin_log2 sentinel: no conclusive gap was measured.
inline constexpr long kNoMargin = LONG_MIN;

// One decided comparison. lhs/rhs render the two decisive enclosure edges
// (for a satisfied strict `lhs < rhs` these are the upper edge of the left
// enclosure and the lower edge of the right one). margin_log2 is
// floor(log2 |gap|) between those edges.
struct EvidenceItem {
  std::string label;
  long n = -1;  // prefix index the item is anchored to; -1 = global
  std::string lhs;
  std::string rhs;
  long margin_log2 = kNoMargin;
  EvidenceKind kind = EvidenceKind::TheoremBacked;
  EvidenceStatus status = EvidenceStatus::Inconclusive;
  std::string note;
};

// Builders used by every checker. They decide the comparison from the
// enclosures, fill the rendered edges and the margin, and leave the item
// Inconclusive when the enclosures overlap.
EvidenceItem make_less(std::string label, long n, const RatInterval& lhs,
                       const RatInterval& rhs, EvidenceKind kind, std::string note = "");
EvidenceItem make_geq(std::string label, long n, const RatInterval& lhs,
                      const RatInterval& rhs, EvidenceKind kind, std::string note = "");
EvidenceItem make_equal(std::string label, long n, const Rat& lhs, const Rat& rhs,
                        EvidenceKind kind, std::string note = "");

// Windowed growth-exponent estimate: enclosures of q_l^(1/l) sampled over an
// index window, with the window extremes m_hat (weakest growth) and M_hat
// (strongest growth). The floors certify q_l^2 >= 2^l and q_l >= (3/2)^l at
// the sampled indices.
struct GrowthWindow {
  size_t lo = 0, hi = 0;  // 0,0 = derive from the scanned depth
};

struct GrowthEstimate {
  size_t window_lo = 0, window_hi = 0;
  RatInterval m_hat, M_hat;
  std::vector<std::pair<size_t, RatInterval>> samples;  // (l, q_l^(1/l))
  bool sqrt2_floor_ok = true;
  bool growth_floor_ok = true;
  std::string note;
};

struct CriterionReport {
  std::string criterion;
  std::string word_spec;
  size_t prefix_len = 0;
  unsigned precision_bits = 0;
  std::vector<Witness> witnesses;
  std::vector<EvidenceItem> evidence;
  std::optional<GrowthEstimate> growth;
  std::string verdict;
  std::string disclaimer;

  // 0 = verdict produced, 1 = a theorem-backed item failed (internal
  // inconsistency), 2 = inconclusive.
  int exit_code() const;
};

extern const char* const kEvidenceDisclaimer;

// Fills verdict from the evidence: "violated-at(n)" if any non-informational
// item is Violated (theorem-backed ones take precedence for the exit code),
// "inconclusive(<label>)" if any non-informational item is undecided, else
// "hypotheses-verified-up-to-prefix". Also stamps the fixed disclaimer.
void derive_verdict(CriterionReport& r);

// --- Scan snapshots -------------------------------------------------------
// For long prefixes the checkers avoid storing the whole convergent table:
// they capture the recurrence state only at the indices a criterion needs.
// A snapshot at l holds rows l and l-1, enough to rebuild the convergent
// p_l/q_l and the enclosure of every continuation of the length-l prefix.

struct TailSnapshot {
  size_t l = 0;
  Int p, q, p_prev, q_prev;
};

// Single pass of the recurrence over w, capturing the requested indices.
// Indices are deduplicated and must all be in [1, |w|].
std::vector<TailSnapshot> collect_snapshots(const Word& w, std::vector<size_t> indices);

// All reals whose expansion starts with the length-l prefix lie in here.
RatInterval enclosure_from(const TailSnapshot& s);

// Indices each criterion captures: the anchor rows of its witnesses plus a
// deterministic ladder of evaluation depths and growth-window samples.
std::vector<size_t> theorem1_interest(const Word& w, size_t prefix_cap);
std::vector<size_t> theorem2_interest(const Word& w, const Rat& w_max, size_t prefix_cap,
                                      size_t u_min = 1);
std::vector<size_t> theorem3_interest(const Word& w, const Rat& w_max, const Rat& wprime_min,
                                      size_t prefix_cap, size_t u_min = 1);

// --- Criterion checkers ---------------------------------------------------

// Palindromic prefixes: for each palindromic prefix length n within the cap,
// certify the numerator/denominator symmetry p_n = q_{n-1} exactly and the
// simultaneous-approximation bound
//   max(|alpha - p_n/q_n|, |alpha^2 - p_{n-1}/q_n|) < (a_1 + 3) / q_n^2,
// plus, once q_n > (a_1 + 3)^2, the cube-exponent form
//   max(...)^2 * q_n^3 < 1.
CriterionReport theorem1_evidence(const Word& w, size_t prefix_cap,
                                  unsigned precision_bits = 128);

// Quasi-palindromic witnesses (prefix = U V mirror(U), s = 2u + v): certify
// the reflection bound |q_s alpha - q_{s-1}| < q_s / q_u^2, the convergent
// quality of rows s and s-1, and the four-form product
//   |q_s alpha - p_s| |q_{s-1} alpha - p_{s-1}| |q_s alpha - q_{s-1}| q_{s-1}
//     < 1 / q_u^2.
CriterionReport theorem2_evidence(const Word& w, const Rat& w_max, size_t prefix_cap,
                                  unsigned precision_bits = 128, size_t u_min = 1);

// Offset witnesses (prefix = W U V mirror(U), r = |W| >= 1): build the
// composite word prefix_t ++ mirror(prefix_r), whose continued-fraction value
// P/Q (with previous convergent P'/Q') approximates alpha; certify
//   |Q alpha - P|  < Q / q_t^2,
//   |Q' alpha - P'| < Q' / q_t^2,
//   |Q alpha - Q'| < Q / q_s^2,
//   product of the four linear forms < Q^4 / (q_t^4 q_s^2),
//   q_t q_r <= Q <= 2 q_t q_r and q_s^2 <= Q <= q_t^2 (exact),
// and test the growth hypothesis u/r > 2 log(M_hat)/log(m_hat) - 1.
CriterionReport theorem3_evidence(const Word& w, const Rat& w_max, const Rat& wprime_min,
                                  size_t prefix_cap, unsigned precision_bits = 128,
                                  size_t u_min = 1);

// Snapshot-driven cores: identical semantics, but the convergent rows are
// supplied by the caller (the pipeline collects them during its own scan).
CriterionReport theorem1_core(const Word& w, size_t prefix_cap, unsigned precision_bits,
                              const std::vector<TailSnapshot>& rows);
CriterionReport theorem2_core(const Word& w, const Rat& w_max, size_t prefix_cap,
                              unsigned precision_bits, size_t u_min,
                              const std::vector<TailSnapshot>& rows);
CriterionReport theorem3_core(const Word& w, const Rat& w_max, const Rat& wprime_min,
                              size_t prefix_cap, unsigned precision_bits, size_t u_min,
                              const std::vector<TailSnapshot>& rows);

// Threshold separating the run-length growth regimes for letters a < b:
// with alpha_m the fixed point of x = m + 1/x and rho = log(alpha_b)/log(alpha_a),
// bound = (1 + sqrt(8 rho^2 + 1)) / (2 rho), certified to lie in (sqrt2, 2).
struct BakerThreshold {
  RatInterval alpha_small, alpha_large;
  RatInterval rho;
  RatInterval bound;
  RatInterval sqrt2;
  unsigned precision_bits = 0;
};
BakerThreshold baker_threshold(const Int& a, const Int& b, unsigned precision_bits = 128);

// Run-length ratio scan for two-letter run words: checks the exact growth
// hypothesis lambda_{n+1}^2 > 2 lambda_n^2 for consecutive run lengths
// (>= 2 terms required) and reports the minimum ratio against the
// regime threshold above, informationally.
CriterionReport theorem4_ratio_scan(const BakerSpec& spec, size_t n_terms,
                                    unsigned precision_bits = 128);

// Matched-tail block sums for a two-letter run word at a given stage n >= 2:
// partitions the prefix up to s_n into alternating run blocks and their
// reflected images, and certifies for every block both
//   |sum of log x_m - lambda * log(alpha_letter)| < 20 / theta^3   and
//   sum over the block of |log x_m - log(alpha_letter)| < 20 / theta^3,
// where x_m = q_m / q_{m-1}, plus the exact telescoping identity
// prod_{m<=s_n} x_m = q_{s_n}.
CriterionReport block_log_sums(const BakerSpec& spec, size_t stage,
                               unsigned precision_bits = 128);

// Verifies a prescribed-approximation-order construction state: the two-sided
// convergent gap 1/(q_{n-1}^2 (b_n + 2)) < |alpha - p_{n-1}/q_{n-1}| <
// 1/(q_{n-1}^2 b_n) at every index, the target window
//   phi(q)/(1 + 3 q^2 phi(q)) < |alpha - p/q| < phi(q)
// at the designated checkpoints, the off-checkpoint floor
// |alpha - p_n/q_n| >= 3 phi(q_n), and (optionally) the exact consistency
// b_{n_j} = ceil(1/psi(q_{n_j - 1})) recomputed from the word itself.
struct Theorem5VerifyOptions {
  bool check_consistency = true;
  // Evaluate alpha from the given word alone instead of regenerating and
  // extending the construction (used when the word has been tampered with
  // on purpose; shrinks the decidable index range by one).
  bool word_is_authoritative = false;
  unsigned precision_bits = 128;
};
CriterionReport theorem5_verify(const Theorem5State& state, const ApproxOrderFunction& phi,
                                const Theorem5VerifyOptions& opt = {});

// Windowed growth exponents over an explicit convergent table.
GrowthEstimate growth_exponents(const ConvergentTable& table, GrowthWindow window,
                                unsigned precision_bits = 128);

// Copy of w with the quotient at 1-based index idx replaced (negative-control
// harness). value must be >= 1.
Word mutate_word(const Word& w, size_t idx, const Int& value);

}  // namespace palcf
