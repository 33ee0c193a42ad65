#include <map>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "palcf/cf_core.hpp"
#include "palcf/generators.hpp"
#include "palcf/numeric.hpp"
#include "palcf/words.hpp"

using namespace palcf;

namespace {

// Word of length n that is all ones except for the given 1-based exceptions.
Word ones_except(size_t n, const std::map<size_t, Int>& exceptions) {
  Word w;
  for (size_t i = 1; i <= n; ++i) {
    auto it = exceptions.find(i);
    w.push(it == exceptions.end() ? Int(1) : it->second);
  }
  return w;
}

BakerSpec explicit_spec(long a, long b, std::vector<long> ls) {
  BakerSpec s;
  s.a = a;
  s.b = b;
  for (long l : ls) s.lambdas.push_back(Int(l));
  return s;
}

BakerSpec growth_spec(long a, long b, const Rat& gamma, long seed) {
  BakerSpec s;
  s.a = a;
  s.b = b;
  s.has_growth = true;
  s.gamma = gamma;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("parity word: fixed prefixes and letter swap") {
  CHECK_EQ(thue_morse_word(1, 2, 8), word_from({1, 1, 2, 1, 2, 2, 1, 1}));
  CHECK_EQ(thue_morse_word(3, 1, 8), word_from({3, 3, 1, 3, 1, 1, 3, 3}));
  Word u = thue_morse_word(1, 2, 16);
  CHECK_EQ(prefix(u, 8), thue_morse_word(1, 2, 8));
  Word v = thue_morse_word(2, 1, 16);
  for (size_t i = 1; i <= 16; ++i) CHECK_EQ(u.at(i) + v.at(i), Int(3));
  CHECK(thue_morse_word(1, 2, 0).empty());
  CHECK_THROWS_AS(thue_morse_word(2, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(thue_morse_word(0, 1, 4), std::invalid_argument);
}

TEST_CASE("parity word: matches doubling-rule oracle") {
  CHECK_EQ(thue_morse_word(1, 2, 500), oracle::tm_word(1, 2, 500));
  CHECK_EQ(thue_morse_word(4, 7, 300), oracle::tm_word(4, 7, 300));
}

TEST_CASE("alternating-run word: explicit run lengths") {
  BakerSpec s = explicit_spec(1, 2, {2, 3, 2});
  CHECK_EQ(baker_word(s, 7), word_from({1, 1, 2, 2, 2, 1, 1}));
  CHECK_EQ(baker_word(s, 4), word_from({1, 1, 2, 2}));  // partial final run
  CHECK_EQ(baker_run_lengths(s, 2), std::vector<Int>{Int(2), Int(3)});
  CHECK_THROWS_AS(baker_run_lengths(s, 4), std::invalid_argument);
  CHECK_THROWS_WITH_AS(baker_word(s, 8), doctest::Contains("exhausted"),
                       std::invalid_argument);
}

TEST_CASE("alternating-run word: growth rule") {
  CHECK_EQ(baker_word(growth_spec(1, 2, 2, 1), 7),
           word_from({1, 2, 2, 1, 1, 1, 1}));
  // ceil(3/2 * l) from 1: 1, 2, 3, 5, 8, 12, 18, 27.
  std::vector<Int> ls = baker_run_lengths(growth_spec(1, 2, make_rat(3, 2), 1), 8);
  std::vector<Int> want{Int(1), Int(2), Int(3), Int(5), Int(8), Int(12), Int(18), Int(27)};
  CHECK_EQ(ls, want);
  // Constant factor keeps the seed length forever.
  std::vector<Int> flat = baker_run_lengths(growth_spec(1, 2, 1, 4), 5);
  for (const Int& l : flat) CHECK_EQ(l, Int(4));
}

TEST_CASE("alternating-run word: validation") {
  CHECK_THROWS_AS(baker_word(explicit_spec(2, 2, {1}), 1), std::invalid_argument);
  CHECK_THROWS_AS(baker_word(explicit_spec(0, 2, {1}), 1), std::invalid_argument);
  CHECK_THROWS_AS(baker_word(explicit_spec(1, 2, {}), 1), std::invalid_argument);
  CHECK_THROWS_AS(baker_word(explicit_spec(1, 2, {2, 0}), 2), std::invalid_argument);
  CHECK_THROWS_AS(baker_word(growth_spec(1, 2, make_rat(1, 2), 3), 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(baker_word(growth_spec(1, 2, 2, 0), 2), std::invalid_argument);
}

TEST_CASE("run blocks: positions and clipping") {
  BakerSpec s = explicit_spec(1, 2, {2, 3, 2});
  std::vector<RunBlock> blocks = baker_run_blocks(s, 7);
  REQUIRE_EQ(blocks.size(), 3);
  CHECK_EQ(blocks[0], RunBlock{1, Int(1), 1, 2});
  CHECK_EQ(blocks[1], RunBlock{2, Int(2), 3, 5});
  CHECK_EQ(blocks[2], RunBlock{3, Int(1), 6, 7});
  std::vector<RunBlock> clipped = baker_run_blocks(s, 4);
  REQUIRE_EQ(clipped.size(), 2);
  CHECK_EQ(clipped[1], RunBlock{2, Int(2), 3, 4});
}

TEST_CASE("run decomposition agrees with generated blocks") {
  for (size_t n : {1, 4, 7, 23, 100}) {
    BakerSpec g = growth_spec(3, 5, make_rat(3, 2), 2);
    CHECK_EQ(runs_of(baker_word(g, n)), baker_run_blocks(g, n));
  }
  BakerSpec e = explicit_spec(1, 9, {1, 1, 2, 5});
  CHECK_EQ(runs_of(baker_word(e, 9)), baker_run_blocks(e, 9));
  CHECK(runs_of(Word{}).empty());
  std::vector<RunBlock> one = runs_of(word_from({6, 6, 6}));
  REQUIRE_EQ(one.size(), 1);
  CHECK_EQ(one[0], RunBlock{1, Int(6), 1, 3});
}

TEST_CASE("power-law order function: exact threshold predicates") {
  // phi(x) = x^-3, so x^2 phi(x) = 1/x.
  ApproxOrderFunction f = ApproxOrderFunction::power(1, 3);
  CHECK(f.psi_at_most(10, make_rat(1, 10)));
  CHECK_FALSE(f.psi_at_most(10, make_rat(9, 100)));
  CHECK(f.psi_greater(10, make_rat(9, 100)));
  CHECK_FALSE(f.psi_greater(10, make_rat(1, 10)));
  CHECK_FALSE(f.psi_at_most(10, 0));
  CHECK(f.psi_greater(10, -1));
  CHECK_THROWS_AS(f.psi_at_most(0, 1), std::domain_error);
  // Stage-boundary witnesses for the palindrome construction below.
  Rat x5 = make_rat(int_pow(3, 5), int_pow(2, 5));
  Rat x6 = make_rat(int_pow(3, 6), int_pow(2, 6));
  CHECK(f.psi_greater(x5, make_rat(1, 10)));
  CHECK(f.psi_at_most(x6, make_rat(1, 10)));
}

TEST_CASE("power-law order function: predicates are exact complements") {
  auto g = oracle::rng(901);
  ApproxOrderFunction fs[] = {
      ApproxOrderFunction::power(1, 3),
      ApproxOrderFunction::power(2, make_rat(5, 2)),
      ApproxOrderFunction::power(make_rat(1, 3), make_rat(7, 3)),
  };
  for (int it = 0; it < 200; ++it) {
    Rat x = make_rat(1 + static_cast<long>(g() % 400), 1 + static_cast<long>(g() % 7));
    Rat t = make_rat(1 + static_cast<long>(g() % 50), 1 + static_cast<long>(g() % 1000));
    for (const auto& f : fs) CHECK_NE(f.psi_at_most(x, t), f.psi_greater(x, t));
  }
}

TEST_CASE("power-law order function: ceiling of reciprocal") {
  ApproxOrderFunction cube = ApproxOrderFunction::power(1, 3);
  CHECK_EQ(cube.ceil_inv_psi(1), Int(1));    // 1/Psi(q) = q exactly
  CHECK_EQ(cube.ceil_inv_psi(13), Int(13));
  CHECK_EQ(cube.ceil_inv_psi(2405), Int(2405));
  ApproxOrderFunction half = ApproxOrderFunction::power(2, make_rat(5, 2));
  CHECK_EQ(half.ceil_inv_psi(16), Int(2));   // sqrt(16)/2 hits an integer
  CHECK_EQ(half.ceil_inv_psi(94), Int(5));   // ceil(sqrt(94)/2)
  CHECK_EQ(half.ceil_inv_psi(1), Int(1));
  ApproxOrderFunction third = ApproxOrderFunction::power(1, make_rat(7, 3));
  CHECK_EQ(third.ceil_inv_psi(27), Int(3));  // exact cube root
  CHECK_EQ(third.ceil_inv_psi(28), Int(4));
  CHECK_EQ(third.ceil_inv_psi(1000), Int(10));
  CHECK_EQ(third.ceil_inv_psi(1001), Int(11));
  CHECK_THROWS_AS(cube.ceil_inv_psi(0), std::domain_error);
}

TEST_CASE("power-law order function: ceiling brackets the true reciprocal") {
  auto g = oracle::rng(902);
  ApproxOrderFunction fs[] = {
      ApproxOrderFunction::power(1, 3),
      ApproxOrderFunction::power(2, make_rat(5, 2)),
      ApproxOrderFunction::power(make_rat(3, 7), make_rat(8, 3)),
      ApproxOrderFunction::power(5, 4),
  };
  for (int it = 0; it < 150; ++it) {
    Int q(1 + static_cast<long>(g() % 100000));
    for (const auto& f : fs) {
      Int b = f.ceil_inv_psi(q);
      REQUIRE(b >= 1);
      // b >= 1/Psi(q): equivalently Psi(q) > 1/(b+1); minimality gives
      // Psi(q) <= 1/(b-1) when b > 1.
      CHECK(f.psi_greater(Rat(q), make_rat(1, b + 1)));
      if (b > 1) CHECK(f.psi_at_most(Rat(q), make_rat(1, b - 1)));
    }
  }
}

TEST_CASE("order function: enclosures of the point values") {
  ApproxOrderFunction cube = ApproxOrderFunction::power(1, 3);
  RatInterval e = cube.phi_enclosure(make_rat(3, 2), 128);
  CHECK(e.is_point());
  CHECK_EQ(e.lo, make_rat(8, 27));
  ApproxOrderFunction half = ApproxOrderFunction::power(2, make_rat(5, 2));
  RatInterval p = half.phi_enclosure(4, 128);  // 4^(5/2) = 32 exactly
  CHECK(p.is_point());
  CHECK_EQ(p.lo, make_rat(1, 16));
  ApproxOrderFunction irr = ApproxOrderFunction::power(1, make_rat(5, 2));
  RatInterval w = irr.phi_enclosure(2, 128);  // 2^(-5/2) = 0.176776...
  CHECK(w.lo <= w.hi);
  CHECK(w.lo > make_rat(17677, 100000));
  CHECK(w.hi < make_rat(17678, 100000));
  CHECK(w.width() < pow2(-100));
}

TEST_CASE("table order function: validation") {
  using P = std::pair<Rat, Rat>;
  CHECK_THROWS_AS(ApproxOrderFunction::from_table({}), std::invalid_argument);
  CHECK_THROWS_AS(ApproxOrderFunction::from_table({P{1, 1}, P{2, 1}}),
                  std::invalid_argument);  // x^2 phi increases
  CHECK_THROWS_AS(ApproxOrderFunction::from_table({P{2, 1}, P{1, 1}}),
                  std::invalid_argument);  // abscissae not ascending
  CHECK_THROWS_AS(ApproxOrderFunction::from_table({P{1, 1}, P{1, 1}}),
                  std::invalid_argument);  // duplicate abscissa
  CHECK_THROWS_AS(ApproxOrderFunction::from_table({P{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(ApproxOrderFunction::from_table({P{1, 0}}), std::invalid_argument);
  CHECK_NOTHROW(ApproxOrderFunction::from_table({P{1, 1}, P{2, make_rat(1, 4)}}));
}

TEST_CASE("table order function: conservative answers and domain errors") {
  using P = std::pair<Rat, Rat>;
  // Samples of phi at 1, 10, 100 with Psi = 1, 1/10, 1/100.
  ApproxOrderFunction t = ApproxOrderFunction::from_table(
      {P{1, 1}, P{10, make_rat(1, 1000)}, P{100, make_rat(1, 1000000)}});
  CHECK(t.psi_at_most(10, make_rat(1, 10)));
  CHECK_FALSE(t.psi_at_most(5, make_rat(1, 10)));  // nearest sample can't certify
  CHECK(t.psi_at_most(50, make_rat(1, 10)));
  CHECK(t.psi_greater(5, make_rat(1, 20)));   // Psi(5) >= Psi(10) = 1/10
  CHECK_FALSE(t.psi_greater(5, make_rat(1, 10)));
  CHECK_THROWS_AS(t.psi_at_most(make_rat(1, 2), 1), std::domain_error);
  CHECK_THROWS_AS(t.psi_greater(200, make_rat(1, 10)), std::domain_error);
  CHECK_EQ(t.ceil_inv_psi(7), Int(10));   // certified through the sample at 10
  CHECK_EQ(t.ceil_inv_psi(10), Int(10));
  CHECK_EQ(t.ceil_inv_psi(11), Int(100));
  CHECK_THROWS_AS(t.ceil_inv_psi(101), std::domain_error);
  RatInterval at = t.phi_enclosure(10, 64);
  CHECK(at.is_point());
  CHECK_EQ(at.lo, make_rat(1, 1000));
  RatInterval between = t.phi_enclosure(50, 64);  // Psi(50) in [1/100, 1/10]
  CHECK_EQ(between.lo, make_rat(1, 250000));
  CHECK_EQ(between.hi, make_rat(1, 25000));
  CHECK_THROWS_AS(t.phi_enclosure(200, 64), std::domain_error);
  CHECK_EQ(t.describe(), "table(3 points)");
  CHECK_EQ(ApproxOrderFunction::power(2, make_rat(5, 2)).describe(),
           "power(c=2,s=5/2)");
}

TEST_CASE("palindrome completion: cubic decay, frozen stage trace") {
  ApproxOrderFunction f = ApproxOrderFunction::power(1, 3);
  Theorem5State st = theorem5_word(f, 3);
  REQUIRE_EQ(st.stages.size(), 3);
  CHECK_EQ(st.stages[0].n, 7);
  CHECK_EQ(st.stages[0].b, Int(13));
  CHECK_EQ(st.stages[1].n, 14);
  CHECK_EQ(st.stages[1].b, Int(2405));
  CHECK_EQ(st.stages[2].n, 29);
  CHECK_EQ(st.stages[2].b, Int("22488231481"));
  CHECK_EQ(st.completion_lengths, std::vector<size_t>{27, 57});
  CHECK_EQ(st.word.size(), 57);
  Word want = ones_except(57, {{7, Int(13)},
                               {14, Int(2405)},
                               {21, Int(13)},
                               {29, Int("22488231481")},
                               {37, Int(13)},
                               {44, Int(2405)},
                               {51, Int(13)}});
  CHECK_EQ(st.word, want);
  CHECK_EQ(st.phi_label, "power(c=1,s=3)");
}

TEST_CASE("palindrome completion: cubic decay, fourth stage") {
  Theorem5State st = theorem5_word(ApproxOrderFunction::power(1, 3), 4);
  REQUIRE_EQ(st.stages.size(), 4);
  const Int b4("533744239734568988873735895714240");
  CHECK_EQ(st.stages[3].n, 66);
  CHECK_EQ(st.stages[3].b, b4);
  CHECK_EQ(st.completion_lengths, std::vector<size_t>{27, 57, 131});
  REQUIRE_EQ(st.word.size(), 131);
  Word want = ones_except(131, {{7, Int(13)},
                                {14, Int(2405)},
                                {21, Int(13)},
                                {29, Int("22488231481")},
                                {37, Int(13)},
                                {44, Int(2405)},
                                {51, Int(13)},
                                {66, b4},
                                {81, Int(13)},
                                {88, Int(2405)},
                                {95, Int(13)},
                                {103, Int("22488231481")},
                                {111, Int(13)},
                                {118, Int(2405)},
                                {125, Int(13)}});
  CHECK_EQ(st.word, want);
  // Every completed length is a palindromic prefix of the final word.
  std::vector<size_t> pals = palindromic_prefix_lengths(st.word);
  for (size_t len : {27u, 57u, 131u})
    CHECK(std::find(pals.begin(), pals.end(), len) != pals.end());
  // The stage values grow at least tenfold.
  for (size_t j = 1; j < st.stages.size(); ++j)
    CHECK(st.stages[j].b >= 10 * st.stages[j - 1].b);
  // The first stage value is the reciprocal at the Fibonacci denominator.
  ConvergentTable tab(st.word, 6);
  CHECK_EQ(tab.q(6), Int(13));
}

TEST_CASE("palindrome completion: single stage and validation") {
  Theorem5State st = theorem5_word(ApproxOrderFunction::power(1, 3), 1);
  REQUIRE_EQ(st.stages.size(), 1);
  CHECK_EQ(st.word, ones_except(7, {{7, Int(13)}}));
  CHECK(st.completion_lengths.empty());
  CHECK_THROWS_AS(theorem5_word(ApproxOrderFunction::power(1, 3), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(theorem5_word(ApproxOrderFunction::power(1, 3), 17),
                  std::invalid_argument);
}

TEST_CASE("palindrome completion: fractional decay exponent") {
  Theorem5State st = theorem5_word(ApproxOrderFunction::power(2, make_rat(5, 2)), 3);
  REQUIRE_EQ(st.stages.size(), 3);
  CHECK_EQ(st.stages[0].n, 16);
  CHECK_EQ(st.stages[0].b, Int(16));
  CHECK_EQ(st.stages[1].n, 30);
  CHECK_EQ(st.stages[1].b, Int(1267));
  CHECK_EQ(st.stages[2].n, 61);
  CHECK_EQ(st.stages[2].b, Int(145264911));
  CHECK_EQ(st.completion_lengths, std::vector<size_t>{59, 121});
  Word want = ones_except(121, {{16, Int(16)},
                                {30, Int(1267)},
                                {44, Int(16)},
                                {61, Int(145264911)},
                                {78, Int(16)},
                                {92, Int(1267)},
                                {106, Int(16)}});
  CHECK_EQ(st.word, want);
}

TEST_CASE("palindrome completion: table backend runs and stalls honestly") {
  // Sample phi(x) = x^-3 at x = (3/2)^k for k = 0..16; enough for one stage,
  // exhausted during the second.
  std::vector<std::pair<Rat, Rat>> pts;
  for (unsigned long k = 0; k <= 16; ++k) {
    Rat x = make_rat(int_pow(3, k), int_pow(2, k));
    pts.push_back({x, make_rat(int_pow(2, 3 * k), int_pow(3, 3 * k))});
  }
  ApproxOrderFunction t = ApproxOrderFunction::from_table(pts);
  Theorem5State one = theorem5_word(t, 1);
  REQUIRE_EQ(one.stages.size(), 1);
  CHECK_EQ(one.stages[0].n, 7);
  // ceil(1/Psi) through the sample above q_6 = 13, i.e. ceil((3/2)^7) = 18.
  CHECK_EQ(one.stages[0].b, Int(18));
  CHECK_THROWS_WITH_AS(theorem5_word(t, 2),
                       doctest::Contains("stage 2"), std::runtime_error);
  CHECK_THROWS_WITH_AS(theorem5_word(t, 2),
                       doctest::Contains("completed 1"), std::runtime_error);
}
