#include "palcf/seqspec.hpp"

#include <cctype>
#include <numeric>

#include "palcf/numeric.hpp"

namespace palcf {
namespace {

// Strict cursor over the spec string; every failure carries the offset into
// the original text (after the trimmed leading whitespace is accounted for).
class Cursor {
 public:
  Cursor(const std::string& s, size_t base) : s_(s), base_(base) {}

  bool done() const { return pos_ >= s_.size(); }
  size_t at() const { return base_ + pos_; }

  [[noreturn]] void fail(const std::string& msg) const { throw SpecParseError(at(), msg); }

  bool peek_is(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  void expect(char c) {
    if (!peek_is(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool try_literal(const std::string& lit) {
    if (s_.compare(pos_, lit.size(), lit) != 0) return false;
    pos_ += lit.size();
    return true;
  }

  std::string digits() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a number");
    return s_.substr(start, pos_ - start);
  }

  Int integer() { return parse_int(digits()); }

  size_t count() {
    Int v = integer();
    if (!v.fits_ulong_p()) fail("count too large");
    return static_cast<size_t>(v.get_ui());
  }

  Rat rational() {
    std::string num = digits();
    if (peek_is('/')) {
      ++pos_;
      return make_rat(parse_int(num), parse_int(digits()));
    }
    return Rat(parse_int(num));
  }

  std::string rest() {
    std::string r = s_.substr(pos_);
    pos_ = s_.size();
    return r;
  }

 private:
  const std::string& s_;
  size_t base_;
  size_t pos_ = 0;
};

Int positive_symbol(Cursor& c) {
  size_t where = c.at();
  Int v = c.integer();
  if (v < 1) throw SpecParseError(where, "quotients must be >= 1");
  return v;
}

SeqSpec parse_explicit(Cursor& c) {
  SeqSpec spec;
  spec.kind = SeqSpec::Kind::Explicit;
  c.expect('[');
  spec.symbols.push(positive_symbol(c));
  while (c.peek_is(',')) {
    c.expect(',');
    spec.symbols.push(positive_symbol(c));
  }
  c.expect(']');
  return spec;
}

SeqSpec parse_runs(Cursor& c) {
  SeqSpec spec;
  spec.kind = SeqSpec::Kind::Runs;
  for (;;) {
    Int sym = positive_symbol(c);
    c.expect('^');
    size_t where = c.at();
    Int rep = c.integer();
    if (rep < 1) throw SpecParseError(where, "run lengths must be >= 1");
    spec.run_pairs.emplace_back(sym, rep);
    if (!c.peek_is(',')) break;
    c.expect(',');
  }
  return spec;
}

void parse_letter_pair(Cursor& c, Int& a, Int& b) {
  c.expect('(');
  size_t where = c.at();
  a = positive_symbol(c);
  c.expect(',');
  b = positive_symbol(c);
  if (a == b) throw SpecParseError(where, "the two letters must differ");
}

SeqSpec parse_tm(Cursor& c) {
  SeqSpec spec;
  spec.kind = SeqSpec::Kind::ThueMorse;
  parse_letter_pair(c, spec.tm_a, spec.tm_b);
  c.expect(')');
  return spec;
}

SeqSpec parse_baker(Cursor& c) {
  SeqSpec spec;
  spec.kind = SeqSpec::Kind::Baker;
  parse_letter_pair(c, spec.baker.a, spec.baker.b);
  c.expect(';');
  if (c.try_literal("lambdas=")) {
    spec.baker.has_growth = false;
    for (;;) {
      size_t where = c.at();
      Int lam = c.integer();
      if (lam < 1) throw SpecParseError(where, "run lengths must be >= 1");
      spec.baker.lambdas.push_back(lam);
      if (!c.peek_is(',')) break;
      c.expect(',');
    }
  } else if (c.try_literal("gamma=")) {
    spec.baker.has_growth = true;
    size_t where = c.at();
    spec.baker.gamma = c.rational();
    if (spec.baker.gamma < 1) throw SpecParseError(where, "gamma must be >= 1");
    spec.baker.seed = 1;
    if (c.peek_is(',')) {
      c.expect(',');
      if (!c.try_literal("seed=")) c.fail("expected 'seed='");
      where = c.at();
      spec.baker.seed = c.integer();
      if (spec.baker.seed < 1) throw SpecParseError(where, "seed must be >= 1");
    }
  } else {
    c.fail("expected 'lambdas=' or 'gamma='");
  }
  c.expect(')');
  validate_baker_spec(spec.baker);
  return spec;
}

// Stage values square from stage to stage (digit count doubles), so a loose
// cap keeps a typo from turning into an out-of-memory construction.
constexpr size_t kMaxStages = 16;

SeqSpec parse_thm5(Cursor& c) {
  SeqSpec spec;
  spec.kind = SeqSpec::Kind::Theorem5;
  c.expect('(');
  size_t where = c.at();
  spec.phi_c = c.rational();
  if (spec.phi_c <= 0) throw SpecParseError(where, "the coefficient must be > 0");
  c.expect(',');
  where = c.at();
  spec.phi_s = c.rational();
  if (spec.phi_s <= 2) throw SpecParseError(where, "the exponent must be > 2");
  if (c.peek_is(';')) {
    c.expect(';');
    if (!c.try_literal("stages=")) c.fail("expected 'stages='");
    where = c.at();
    spec.stages = c.count();
    if (spec.stages < 1) throw SpecParseError(where, "stage count must be >= 1");
    if (spec.stages > kMaxStages)
      throw SpecParseError(where, "stage count capped at " + std::to_string(kMaxStages));
  }
  c.expect(')');
  return spec;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace

SeqSpec parse_spec(const std::string& text) {
  size_t lo = text.find_first_not_of(" \t");
  if (lo == std::string::npos) throw SpecParseError(0, "empty spec");
  size_t hi = text.find_last_not_of(" \t");
  std::string body = text.substr(lo, hi - lo + 1);
  Cursor c(body, lo);

  SeqSpec spec;
  if (c.try_literal("explicit:")) {
    spec = parse_explicit(c);
  } else if (c.try_literal("runs:")) {
    spec = parse_runs(c);
  } else if (c.try_literal("thm5")) {
    spec = parse_thm5(c);
  } else if (c.try_literal("tm")) {
    spec = parse_tm(c);
  } else if (c.try_literal("baker")) {
    spec = parse_baker(c);
  } else if (c.try_literal("file:")) {
    spec.kind = SeqSpec::Kind::File;
    spec.path = c.rest();
    if (spec.path.empty()) c.fail("expected a path");
  } else {
    c.fail("unknown spec family (expected explicit:, runs:, tm(, baker(, thm5(, or file:)");
  }
  if (!c.done()) c.fail("trailing characters after the spec");
  return spec;
}

std::string canonical_spec(const SeqSpec& spec) {
  switch (spec.kind) {
    case SeqSpec::Kind::Explicit: {
      std::string out = "explicit:[";
      for (size_t i = 0; i < spec.symbols.size(); ++i) {
        if (i) out += ',';
        out += spec.symbols.at(i + 1).get_str();
      }
      return out + "]";
    }
    case SeqSpec::Kind::Runs: {
      std::string out = "runs:";
      for (size_t i = 0; i < spec.run_pairs.size(); ++i) {
        if (i) out += ',';
        out += spec.run_pairs[i].first.get_str() + "^" + spec.run_pairs[i].second.get_str();
      }
      return out;
    }
    case SeqSpec::Kind::ThueMorse:
      return "tm(" + spec.tm_a.get_str() + "," + spec.tm_b.get_str() + ")";
    case SeqSpec::Kind::Baker: {
      std::string out = "baker(" + spec.baker.a.get_str() + "," + spec.baker.b.get_str() + ";";
      if (spec.baker.has_growth) {
        out += "gamma=" + rat_str(spec.baker.gamma) + ",seed=" + spec.baker.seed.get_str();
      } else {
        out += "lambdas=";
        for (size_t i = 0; i < spec.baker.lambdas.size(); ++i) {
          if (i) out += ',';
          out += spec.baker.lambdas[i].get_str();
        }
      }
      return out + ")";
    }
    case SeqSpec::Kind::Theorem5:
      return "thm5(" + rat_str(spec.phi_c) + "," + rat_str(spec.phi_s) +
             ";stages=" + std::to_string(spec.stages) + ")";
    case SeqSpec::Kind::File:
      return "file:" + spec.path;
  }
  throw std::logic_error("canonical_spec: unreachable");
}

bool is_unbounded(const SeqSpec& spec) {
  switch (spec.kind) {
    case SeqSpec::Kind::ThueMorse:
      return true;
    case SeqSpec::Kind::Baker:
      return spec.baker.has_growth;
    default:
      return false;
  }
}

namespace {

size_t checked_total(const Int& total, const char* what) {
  if (!total.fits_ulong_p())
    throw std::invalid_argument(std::string(what) + ": total symbol count does not fit memory");
  return static_cast<size_t>(total.get_ui());
}

}  // namespace

size_t natural_length(const SeqSpec& spec) {
  switch (spec.kind) {
    case SeqSpec::Kind::Explicit:
      return spec.symbols.size();
    case SeqSpec::Kind::Runs: {
      Int total = 0;
      for (const auto& rp : spec.run_pairs) total += rp.second;
      return checked_total(total, "runs spec");
    }
    case SeqSpec::Kind::Baker: {
      if (spec.baker.has_growth) break;
      Int total = std::accumulate(spec.baker.lambdas.begin(), spec.baker.lambdas.end(), Int(0));
      return checked_total(total, "baker spec");
    }
    case SeqSpec::Kind::Theorem5:
      return theorem5_state(spec).word.size();
    case SeqSpec::Kind::File:
      return read_word_file(spec.path).word.size();
    default:
      break;
  }
  throw std::invalid_argument("natural_length: the spec is unbounded");
}

Word materialize(const SeqSpec& spec, size_t n) {
  if (is_unbounded(spec)) {
    if (n == 0)
      throw std::invalid_argument("materialize: the spec is unbounded; a prefix length is required");
    if (spec.kind == SeqSpec::Kind::ThueMorse) return thue_morse_word(spec.tm_a, spec.tm_b, n);
    return baker_word(spec.baker, n);
  }

  Word base;
  switch (spec.kind) {
    case SeqSpec::Kind::Explicit:
      base = spec.symbols;
      break;
    case SeqSpec::Kind::Runs:
      for (const auto& rp : spec.run_pairs) {
        size_t rep = checked_total(rp.second, "runs spec");
        for (size_t i = 0; i < rep; ++i) base.push(rp.first);
      }
      break;
    case SeqSpec::Kind::Baker:
      return baker_word(spec.baker, n == 0 ? natural_length(spec) : n);
    case SeqSpec::Kind::Theorem5:
      base = theorem5_state(spec).word;
      break;
    case SeqSpec::Kind::File:
      base = read_word_file(spec.path).word;
      break;
    default:
      throw std::logic_error("materialize: unreachable");
  }
  if (n == 0) return base;
  if (n > base.size())
    throw std::invalid_argument("materialize: the spec provides only " +
                                std::to_string(base.size()) + " symbols, " + std::to_string(n) +
                                " requested");
  return prefix(base, n);
}

ApproxOrderFunction phi_of(const SeqSpec& spec) {
  if (spec.kind != SeqSpec::Kind::Theorem5)
    throw std::invalid_argument("phi_of: not a thm5 spec");
  return ApproxOrderFunction::power(spec.phi_c, spec.phi_s);
}

Theorem5State theorem5_state(const SeqSpec& spec) {
  return theorem5_word(phi_of(spec), spec.stages);
}

}  // namespace palcf
