#include "palcf/pipeline.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "palcf/cf_core.hpp"
#include "palcf/numeric.hpp"
#include "palcf/report.hpp"

namespace palcf {
namespace {

const std::set<std::string> kScanCriteria = {"thm1", "thm2", "thm3", "products"};
const std::set<std::string> kAllCriteria = {"thm1", "thm2",   "thm3",    "thm4",
                                            "thm5", "lemma6", "products"};

struct Mutation {
  size_t idx = 0;
  Int value;
};

Mutation parse_mutation(const std::string& s) {
  size_t eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
    throw std::invalid_argument("mutate: expected idx=value, got '" + s + "'");
  Mutation m;
  try {
    Int idx = parse_int(s.substr(0, eq));
    if (idx < 1 || !idx.fits_ulong_p()) throw std::invalid_argument("index");
    m.idx = static_cast<size_t>(idx.get_ui());
    m.value = parse_int(s.substr(eq + 1));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("mutate: expected idx=value, got '" + s + "'");
  }
  if (m.value < 1) throw std::invalid_argument("mutate: the new quotient must be >= 1");
  return m;
}

std::string mutation_tag(const std::string& mutate) {
  if (mutate.empty()) return "";
  Mutation m = parse_mutation(mutate);
  return "#mutate(" + std::to_string(m.idx) + "=" + m.value.get_str() + ")";
}

// Interest indices for one scan criterion; "products" unions both finders'.
std::vector<size_t> interest_for(const std::string& criterion, const Word& w, size_t prefix,
                                 const Rat& w_max, const Rat& wprime_min, size_t u_min) {
  std::vector<size_t> a;
  if (criterion == "thm1") {
    a = theorem1_interest(w, prefix);
  } else if (criterion == "thm2") {
    a = theorem2_interest(w, w_max, prefix, u_min);
  } else if (criterion == "thm3") {
    a = theorem3_interest(w, w_max, wprime_min, prefix, u_min);
  } else {
    a = theorem2_interest(w, w_max, prefix, u_min);
    std::vector<size_t> b = theorem3_interest(w, w_max, wprime_min, prefix, u_min);
    a.insert(a.end(), b.begin(), b.end());
  }
  // advance_scan matches pending indices one by one; they must be strictly
  // ascending or the scan would walk past its last index.
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// Rows are written back into c (taken grows, pending shrinks, registers
// advance). Returns true when the scan stopped at halt_after with work left;
// the checkpoint on disk then holds everything a resume needs.
constexpr size_t kCheckpointStride = 8192;

bool advance_scan(const Word& w, ScanCheckpoint& c, size_t halt_after,
                  const std::string& checkpoint_path) {
  ConvergentScanner scan;
  scan.restore(c.index, c.p, c.p_prev, c.q, c.q_prev);

  auto sync = [&] {
    c.index = scan.index();
    c.p = scan.p();
    c.p_prev = scan.p_prev();
    c.q = scan.q();
    c.q_prev = scan.q_prev();
  };

  while (!c.pending.empty()) {
    size_t l = scan.index() + 1;
    if (l > w.size()) throw std::logic_error("advance_scan: interest index beyond the word");
    scan.advance(w.at(l));
    if (l == c.pending.front()) {
      c.taken.push_back({l, scan.p(), scan.q(), scan.p_prev(), scan.q_prev()});
      c.pending.erase(c.pending.begin());
    }
    bool halt = halt_after != 0 && l == halt_after && !c.pending.empty();
    if (halt || (!checkpoint_path.empty() && l % kCheckpointStride == 0)) {
      sync();
      if (!checkpoint_path.empty()) save_checkpoint(checkpoint_path, c);
      if (halt) return true;
    }
  }
  sync();
  if (!checkpoint_path.empty()) save_checkpoint(checkpoint_path, c);
  return false;
}

CriterionReport merge_products(CriterionReport two, CriterionReport three) {
  CriterionReport r = std::move(two);
  r.criterion = "products";
  r.witnesses.insert(r.witnesses.end(), three.witnesses.begin(), three.witnesses.end());
  for (EvidenceItem& e : three.evidence) {
    bool dup = std::any_of(r.evidence.begin(), r.evidence.end(), [&](const EvidenceItem& f) {
      return f.label == e.label && f.n == e.n && f.lhs == e.lhs && f.rhs == e.rhs &&
             f.kind == e.kind && f.status == e.status && f.note == e.note;
    });
    if (!dup) r.evidence.push_back(std::move(e));
  }
  if (!r.growth && three.growth) r.growth = std::move(three.growth);
  derive_verdict(r);
  return r;
}

CriterionReport run_cores(const ScanCheckpoint& c, const Word& w, const RunConfig& cfg) {
  if (c.criterion == "thm1")
    return theorem1_core(w, cfg.prefix, cfg.precision_bits, c.taken);
  if (c.criterion == "thm2")
    return theorem2_core(w, cfg.w_max, cfg.prefix, cfg.precision_bits, cfg.u_min, c.taken);
  if (c.criterion == "thm3")
    return theorem3_core(w, cfg.w_max, cfg.wprime_min, cfg.prefix, cfg.precision_bits,
                         cfg.u_min, c.taken);
  return merge_products(
      theorem2_core(w, cfg.w_max, cfg.prefix, cfg.precision_bits, cfg.u_min, c.taken),
      theorem3_core(w, cfg.w_max, cfg.wprime_min, cfg.prefix, cfg.precision_bits, cfg.u_min,
                    c.taken));
}

std::map<size_t, std::string> csv_markers(const CriterionReport& r) {
  std::map<size_t, std::string> markers;
  for (const Witness& w : r.witnesses) {
    size_t s = w.r + 2 * w.u + w.v;
    std::string tag = w.r == 0 ? "qp:u=" + std::to_string(w.u)
                               : "off:r=" + std::to_string(w.r) + ":u=" + std::to_string(w.u);
    auto [it, fresh] = markers.emplace(s, tag);
    if (!fresh) it->second += ";" + tag;
  }
  return markers;
}

void emit_outputs(const CriterionReport& r, const Word& w, const RunConfig& cfg) {
  if (!cfg.out_path.empty()) write_report_file(r, cfg.out_path);
  if (!cfg.csv_path.empty())
    write_csv_curve(cfg.csv_path, w, std::min(cfg.prefix, w.size()), cfg.precision_bits,
                    csv_markers(r));
}

RunOutcome finish_scan(ScanCheckpoint& c, const Word& w, const RunConfig& cfg,
                       const std::string& word_spec) {
  RunOutcome out;
  out.report = run_cores(c, w, cfg);
  out.report.word_spec = word_spec;
  emit_outputs(out.report, w, cfg);
  out.exit_code = out.report.exit_code();
  return out;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (!kAllCriteria.count(cfg.criterion))
    throw std::invalid_argument("unknown criterion '" + cfg.criterion + "'");
  if (cfg.prefix < 10) throw std::invalid_argument("prefix cap must be >= 10");
  if (cfg.precision_bits < 64) throw std::invalid_argument("precision must be >= 64 bits");
  if (cfg.w_max <= 0) throw std::invalid_argument("w_max must be > 0");
  if (cfg.wprime_min <= 0) throw std::invalid_argument("wprime_min must be > 0");
  if (cfg.u_min < 1) throw std::invalid_argument("u_min must be >= 1");
  if (cfg.window.lo != 0 || cfg.window.hi != 0) {
    if (cfg.window.lo < 3 || cfg.window.lo > cfg.window.hi)
      throw std::invalid_argument("growth window must satisfy 3 <= lo <= hi");
  }
  bool scan = kScanCriteria.count(cfg.criterion) != 0;
  if (cfg.halt_after != 0 && !scan)
    throw std::invalid_argument("halt-after applies to scan criteria (thm1/thm2/thm3/products)");
  if (cfg.halt_after != 0 && cfg.checkpoint_path.empty())
    throw std::invalid_argument("halt-after needs a checkpoint path");
  if (!cfg.checkpoint_path.empty() && !scan)
    throw std::invalid_argument("checkpointing applies to scan criteria");
  if (!cfg.csv_path.empty() && !scan)
    throw std::invalid_argument("csv output applies to scan criteria");
  if (!cfg.mutate.empty()) {
    if (cfg.criterion == "thm4" || cfg.criterion == "lemma6")
      throw std::invalid_argument("mutate applies to criteria that analyze a materialized word");
    parse_mutation(cfg.mutate);
  }
}

RunOutcome run_analyze(const RunConfig& cfg) {
  validate_config(cfg);
  SeqSpec spec = parse_spec(cfg.spec_text);
  if (cfg.stages > 0 && spec.kind == SeqSpec::Kind::Theorem5) spec.stages = cfg.stages;
  std::string canonical = canonical_spec(spec);
  std::string word_spec = canonical + mutation_tag(cfg.mutate);

  RunOutcome out;

  if (cfg.criterion == "thm4") {
    if (spec.kind != SeqSpec::Kind::Baker)
      throw std::invalid_argument("criterion thm4 needs a baker(...) spec");
    out.report = theorem4_ratio_scan(spec.baker, cfg.prefix, cfg.precision_bits);
    out.report.word_spec = word_spec;
    emit_outputs(out.report, Word{}, cfg);
    out.exit_code = out.report.exit_code();
    return out;
  }

  if (cfg.criterion == "lemma6") {
    if (spec.kind != SeqSpec::Kind::Baker)
      throw std::invalid_argument("criterion lemma6 needs a baker(...) spec");
    out.report = block_log_sums(spec.baker, cfg.stages == 0 ? 3 : cfg.stages,
                                cfg.precision_bits);
    out.report.word_spec = word_spec;
    emit_outputs(out.report, Word{}, cfg);
    out.exit_code = out.report.exit_code();
    return out;
  }

  if (cfg.criterion == "thm5") {
    if (spec.kind != SeqSpec::Kind::Theorem5)
      throw std::invalid_argument("criterion thm5 needs a thm5(...) spec");
    Theorem5State state = theorem5_state(spec);
    Theorem5VerifyOptions opt;
    opt.precision_bits = cfg.precision_bits;
    if (!cfg.mutate.empty()) {
      Mutation m = parse_mutation(cfg.mutate);
      state.word = mutate_word(state.word, m.idx, m.value);
      opt.word_is_authoritative = true;
    }
    out.report = theorem5_verify(state, phi_of(spec), opt);
    out.report.word_spec = word_spec;
    emit_outputs(out.report, Word{}, cfg);
    out.exit_code = out.report.exit_code();
    return out;
  }

  // Scan criteria: materialize, capture interest rows, run the core.
  Word w = materialize(spec, is_unbounded(spec) ? cfg.prefix : 0);
  if (w.size() > cfg.prefix) w = prefix(w, cfg.prefix);
  if (!cfg.mutate.empty()) {
    Mutation m = parse_mutation(cfg.mutate);
    w = mutate_word(w, m.idx, m.value);
  }

  ScanCheckpoint c;
  c.spec = canonical;
  c.mutate = cfg.mutate.empty() ? "" : mutation_tag(cfg.mutate);
  c.criterion = cfg.criterion;
  c.prefix_cap = cfg.prefix;
  c.precision_bits = cfg.precision_bits;
  c.w_max = rat_str(cfg.w_max);
  c.wprime_min = rat_str(cfg.wprime_min);
  c.u_min = cfg.u_min;
  c.window_lo = cfg.window.lo;
  c.window_hi = cfg.window.hi;
  c.word_fingerprint = word_hash(w, w.size());
  c.pending = interest_for(cfg.criterion, w, cfg.prefix, cfg.w_max, cfg.wprime_min, cfg.u_min);

  if (advance_scan(w, c, cfg.halt_after, cfg.checkpoint_path)) {
    out.halted = true;
    out.exit_code = 3;
    return out;
  }
  return finish_scan(c, w, cfg, word_spec);
}

RunOutcome run_resume(const std::string& checkpoint_path, const RunConfig& overrides) {
  ScanCheckpoint c = load_checkpoint(checkpoint_path);
  if (!kScanCriteria.count(c.criterion))
    throw std::runtime_error("checkpoint carries a non-scan criterion '" + c.criterion + "'");

  if (!overrides.spec_text.empty()) {
    std::string given = canonical_spec(parse_spec(overrides.spec_text));
    if (given != c.spec)
      throw std::runtime_error("checkpoint spec mismatch: checkpoint has '" + c.spec +
                               "', flag says '" + given + "'");
  }
  if (!overrides.criterion.empty() && overrides.criterion != c.criterion)
    throw std::runtime_error("checkpoint criterion mismatch: checkpoint has '" + c.criterion +
                             "', flag says '" + overrides.criterion + "'");

  RunConfig cfg;
  cfg.spec_text = c.spec;
  cfg.criterion = c.criterion;
  cfg.prefix = c.prefix_cap;
  cfg.precision_bits = c.precision_bits;
  cfg.w_max = parse_rat(c.w_max);
  cfg.wprime_min = parse_rat(c.wprime_min);
  cfg.u_min = c.u_min;
  cfg.window = {c.window_lo, c.window_hi};
  cfg.out_path = overrides.out_path;
  cfg.csv_path = overrides.csv_path;
  cfg.checkpoint_path = checkpoint_path;
  cfg.halt_after = overrides.halt_after;

  SeqSpec spec = parse_spec(c.spec);
  Word w = materialize(spec, is_unbounded(spec) ? cfg.prefix : 0);
  if (w.size() > cfg.prefix) w = prefix(w, cfg.prefix);
  std::string word_spec = c.spec;
  if (!c.mutate.empty()) {
    // Stored as "#mutate(idx=value)"; re-apply the corruption.
    std::string inner = c.mutate.substr(8, c.mutate.size() - 9);
    Mutation m = parse_mutation(inner);
    w = mutate_word(w, m.idx, m.value);
    word_spec += c.mutate;
  }
  if (word_hash(w, w.size()) != c.word_fingerprint)
    throw std::runtime_error("checkpoint does not match the regenerated word");

  RunOutcome out;
  if (advance_scan(w, c, cfg.halt_after, checkpoint_path)) {
    out.halted = true;
    out.exit_code = 3;
    return out;
  }
  return finish_scan(c, w, cfg, word_spec);
}

}  // namespace palcf
