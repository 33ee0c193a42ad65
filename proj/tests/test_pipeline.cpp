#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "palcf/checkpoint.hpp"
#include "palcf/numeric.hpp"
#include "palcf/pipeline.hpp"
#include "palcf/report.hpp"
#include "palcf/words.hpp"

using namespace palcf;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(bool(in), "cannot open ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) { std::remove(path.c_str()); }
  ~TempFile() { std::remove(path.c_str()); }
};

RunConfig base_config(std::string spec, std::string criterion) {
  RunConfig cfg;
  cfg.spec_text = std::move(spec);
  cfg.criterion = std::move(criterion);
  return cfg;
}

}  // namespace

TEST_CASE("config validation rejects out-of-range settings") {
  RunConfig cfg = base_config("tm(1,2)", "thm1");
  CHECK_NOTHROW(validate_config(cfg));

  RunConfig bad = cfg;
  bad.prefix = 9;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.precision_bits = 63;
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.criterion = "thm9";
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.halt_after = 100;  // no checkpoint path
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.criterion = "thm4";
  bad.checkpoint_path = "x.json";
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.criterion = "lemma6";
  bad.csv_path = "x.csv";
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.criterion = "thm4";
  bad.mutate = "3=5";
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.mutate = "junk";
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.mutate = "3=0";
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.window = {2, 40};
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.window = {40, 30};
  CHECK_THROWS_AS(validate_config(bad), std::invalid_argument);
}

TEST_CASE("report JSON follows the fixed schema") {
  RunConfig cfg = base_config("runs:1^40", "thm1");
  cfg.prefix = 40;
  RunOutcome out = run_analyze(cfg);
  CHECK_EQ(out.exit_code, 0);
  CHECK_EQ(out.report.word_spec, "runs:1^40");
  CHECK_EQ(out.report.verdict, "hypotheses-verified-up-to-prefix");

  ordered_json j = ordered_json::parse(render_report(out.report));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK_EQ(keys, std::vector<std::string>{"criterion", "word_spec", "prefix_len",
                                          "precision_bits", "witnesses", "evidence", "growth",
                                          "verdict", "disclaimer"});
  CHECK_EQ(j["criterion"], "thm1");
  CHECK_EQ(j["prefix_len"], 40);
  CHECK_EQ(j["precision_bits"], 128);
  REQUIRE(j["evidence"].is_array());
  REQUIRE_FALSE(j["evidence"].empty());
  for (const auto& e : j["evidence"]) {
    for (const char* key :
         {"label", "n", "lhs", "rhs", "margin_log2", "satisfied", "kind", "status", "note"})
      CHECK_MESSAGE(e.contains(key), "missing evidence key ", key);
    CHECK_EQ(e["satisfied"].get<bool>(), e["status"].get<std::string>() == "satisfied");
  }
  CHECK_EQ(j["disclaimer"].get<std::string>(), kEvidenceDisclaimer);
}

TEST_CASE("identical configs render byte-identical reports") {
  RunConfig cfg = base_config("baker(1,2;gamma=2,seed=1)", "thm2");
  cfg.prefix = 300;
  std::string a = render_report(run_analyze(cfg).report);
  std::string b = render_report(run_analyze(cfg).report);
  CHECK_EQ(a, b);
}

TEST_CASE("non-scan criteria dispatch through the pipeline") {
  RunConfig four = base_config("baker(1,2;gamma=3/2,seed=1)", "thm4");
  four.prefix = 12;
  RunOutcome out4 = run_analyze(four);
  CHECK_EQ(out4.exit_code, 0);
  CHECK_EQ(out4.report.verdict, "hypotheses-verified-up-to-prefix");
  CHECK_EQ(out4.report.word_spec, "baker(1,2;gamma=3/2,seed=1)");

  RunConfig six = base_config("baker(1,2;lambdas=2,3,5,8,13,21)", "lemma6");
  six.stages = 3;
  RunOutcome out6 = run_analyze(six);
  CHECK_EQ(out6.exit_code, 0);
  CHECK_EQ(out6.report.criterion, "lemma6");
  CHECK_EQ(out6.report.prefix_len, 42);

  RunConfig five = base_config("thm5(1,3;stages=3)", "thm5");
  RunOutcome out5 = run_analyze(five);
  CHECK_EQ(out5.exit_code, 0);
  CHECK_EQ(out5.report.prefix_len, 57);

  // Criterion/spec family mismatches are configuration errors.
  CHECK_THROWS_AS(run_analyze(base_config("tm(1,2)", "thm4")), std::invalid_argument);
  CHECK_THROWS_AS(run_analyze(base_config("tm(1,2)", "thm5")), std::invalid_argument);
  CHECK_THROWS_AS(run_analyze(base_config("thm5(1,3)", "lemma6")), std::invalid_argument);
}

TEST_CASE("thm5 mutation control fails through the pipeline") {
  RunConfig cfg = base_config("thm5(1,3)", "thm5");
  cfg.mutate = "14=2404";
  RunOutcome out = run_analyze(cfg);
  CHECK_EQ(out.exit_code, 1);
  CHECK_EQ(out.report.word_spec, "thm5(1,3;stages=3)#mutate(14=2404)");
}

TEST_CASE("products merges both witness families into one report") {
  RunConfig cfg = base_config("baker(1,2;gamma=2,seed=1)", "products");
  cfg.prefix = 300;
  RunOutcome out = run_analyze(cfg);
  CHECK_EQ(out.report.criterion, "products");
  CHECK_EQ(out.exit_code, 0);

  bool has_qp = false, has_offset = false;
  for (const Witness& w : out.report.witnesses) (w.r == 0 ? has_qp : has_offset) = true;
  CHECK(has_qp);
  CHECK(has_offset);

  size_t growth_items = 0, thm2_items = 0, thm3_items = 0;
  for (const EvidenceItem& e : out.report.evidence) {
    if (e.label == "denominator growth window") ++growth_items;
    if (e.label == "four-form product bound") ++thm2_items;
    if (e.label == "composite four-form product") ++thm3_items;
  }
  CHECK_EQ(growth_items, 1);  // the shared growth item is deduplicated
  CHECK_GT(thm2_items, 0);
  CHECK_GT(thm3_items, 0);
  CHECK(out.report.growth.has_value());
}

TEST_CASE("checkpoint files round-trip and reject tampering") {
  TempFile tmp("pipeline_cp_roundtrip.json");
  ScanCheckpoint c;
  c.spec = "tm(1,2)";
  c.criterion = "thm2";
  c.prefix_cap = 500;
  c.precision_bits = 192;
  c.w_max = "7/2";
  c.wprime_min = "1";
  c.u_min = 2;
  c.window_lo = 10;
  c.window_hi = 20;
  c.word_fingerprint = 0xdeadbeefcafef00dULL;
  c.index = 41;
  c.p = parse_int("123456789123456789123456789");
  c.p_prev = Int(7);
  c.q = parse_int("987654321987654321987654321");
  c.q_prev = Int(11);
  c.pending = {50, 60};
  c.taken.push_back({41, Int(1), Int(2), Int(3), Int(4)});
  save_checkpoint(tmp.path, c);

  ScanCheckpoint d = load_checkpoint(tmp.path);
  CHECK_EQ(d.spec, c.spec);
  CHECK_EQ(d.criterion, c.criterion);
  CHECK_EQ(d.prefix_cap, c.prefix_cap);
  CHECK_EQ(d.precision_bits, c.precision_bits);
  CHECK_EQ(d.w_max, c.w_max);
  CHECK_EQ(d.u_min, c.u_min);
  CHECK_EQ(d.window_hi, c.window_hi);
  CHECK_EQ(d.word_fingerprint, c.word_fingerprint);
  CHECK_EQ(d.index, c.index);
  CHECK_EQ(d.p, c.p);
  CHECK_EQ(d.q, c.q);
  CHECK_EQ(d.pending, c.pending);
  REQUIRE_EQ(d.taken.size(), 1);
  CHECK_EQ(d.taken[0].l, 41);
  CHECK_EQ(d.taken[0].q_prev, Int(4));

  // Flip one digit inside the stored numerator: the checksum must catch it.
  std::string text = slurp(tmp.path);
  size_t at = text.find("123456789");
  REQUIRE_NE(at, std::string::npos);
  text[at] = '9';
  std::ofstream(tmp.path, std::ios::trunc) << text;
  CHECK_THROWS_WITH_AS(load_checkpoint(tmp.path),
                       doctest::Contains("checksum mismatch"), std::runtime_error);

  std::ofstream(tmp.path, std::ios::trunc) << "not json";
  CHECK_THROWS_WITH_AS(load_checkpoint(tmp.path), doctest::Contains("malformed JSON"),
                       std::runtime_error);
}

TEST_CASE("halted scans resume to byte-identical reports") {
  TempFile direct("pipeline_direct.json"), resumed("pipeline_resumed.json"),
      cp("pipeline_cp.json");

  RunConfig cfg = base_config("tm(1,2)", "thm1");
  cfg.prefix = 1200;
  cfg.out_path = direct.path;
  RunOutcome full = run_analyze(cfg);
  CHECK_EQ(full.exit_code, 0);

  RunConfig halted = cfg;
  halted.out_path.clear();
  halted.checkpoint_path = cp.path;
  halted.halt_after = 600;
  RunOutcome stop = run_analyze(halted);
  CHECK(stop.halted);
  CHECK_EQ(stop.exit_code, 3);

  RunConfig overrides;
  overrides.out_path = resumed.path;
  RunOutcome cont = run_resume(cp.path, overrides);
  CHECK_FALSE(cont.halted);
  CHECK_EQ(cont.exit_code, 0);
  CHECK_EQ(slurp(direct.path), slurp(resumed.path));
}

TEST_CASE("a completed checkpoint resumes as a no-op with the same bytes") {
  TempFile direct("pipeline_noop_direct.json"), resumed("pipeline_noop_resumed.json"),
      cp("pipeline_noop_cp.json");

  RunConfig cfg = base_config("baker(1,2;gamma=2,seed=1)", "thm3");
  cfg.prefix = 400;
  cfg.out_path = direct.path;
  cfg.checkpoint_path = cp.path;
  RunOutcome full = run_analyze(cfg);
  CHECK_FALSE(full.halted);

  RunConfig overrides;
  overrides.out_path = resumed.path;
  RunOutcome again = run_resume(cp.path, overrides);
  CHECK_EQ(again.exit_code, full.exit_code);
  CHECK_EQ(slurp(direct.path), slurp(resumed.path));
}

TEST_CASE("resume cross-checks spec, criterion, and word fingerprint") {
  TempFile cp("pipeline_check_cp.json");
  RunConfig cfg = base_config("tm(1,2)", "thm1");
  cfg.prefix = 600;
  cfg.checkpoint_path = cp.path;
  cfg.halt_after = 300;
  REQUIRE(run_analyze(cfg).halted);

  RunConfig overrides;
  overrides.spec_text = "tm(1,3)";
  CHECK_THROWS_WITH_AS(run_resume(cp.path, overrides), doctest::Contains("spec mismatch"),
                       std::runtime_error);
  overrides = RunConfig{};
  overrides.criterion = "thm2";
  CHECK_THROWS_WITH_AS(run_resume(cp.path, overrides),
                       doctest::Contains("criterion mismatch"), std::runtime_error);

  // Forge a checkpoint whose spec regenerates a different word: the stored
  // fingerprint no longer matches even though the checksum is valid.
  ordered_json j = ordered_json::parse(slurp(cp.path));
  j.erase("checksum");
  j["spec"] = "tm(1,3)";
  j["checksum"] = [&] {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(j.dump())));
    return std::string(buf);
  }();
  std::ofstream(cp.path, std::ios::trunc) << j.dump(2) << "\n";
  CHECK_THROWS_WITH_AS(run_resume(cp.path, RunConfig{}),
                       doctest::Contains("does not match the regenerated word"),
                       std::runtime_error);
}

TEST_CASE("mutated scan runs carry the mutation through resume") {
  TempFile direct("pipeline_mut_direct.json"), resumed("pipeline_mut_resumed.json"),
      cp("pipeline_mut_cp.json");

  RunConfig cfg = base_config("tm(1,2)", "thm1");
  cfg.prefix = 600;
  cfg.mutate = "100=5";
  cfg.out_path = direct.path;
  RunOutcome full = run_analyze(cfg);
  CHECK_EQ(full.report.word_spec, "tm(1,2)#mutate(100=5)");

  RunConfig halted = cfg;
  halted.out_path.clear();
  halted.checkpoint_path = cp.path;
  halted.halt_after = 300;
  REQUIRE(run_analyze(halted).halted);

  RunConfig overrides;
  overrides.out_path = resumed.path;
  RunOutcome cont = run_resume(cp.path, overrides);
  CHECK_EQ(cont.report.word_spec, "tm(1,2)#mutate(100=5)");
  CHECK_EQ(slurp(direct.path), slurp(resumed.path));
}

TEST_CASE("csv curve rows match the word's structure") {
  TempFile csv("pipeline_curve.csv");
  RunConfig cfg = base_config("explicit:[1,2,2,1,1,2,2,1,1,2,2,1]", "thm2");
  cfg.prefix = 12;
  cfg.csv_path = csv.path;
  RunOutcome out = run_analyze(cfg);
  REQUIRE_FALSE(out.report.witnesses.empty());

  std::ifstream in(csv.path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK_EQ(line, "l,root_lo,root_hi,pal_prefix,witness");

  Word w = materialize(parse_spec(cfg.spec_text), 0);
  std::vector<size_t> pal = palindromic_prefix_lengths(w);
  size_t rows = 0, marked = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::vector<std::string> cols;
    std::istringstream ls(line);
    std::string col;
    while (std::getline(ls, col, ',')) cols.push_back(col);
    REQUIRE_GE(cols.size(), 4);
    size_t l = std::stoul(cols[0]);
    CHECK_EQ(l, rows);
    double lo = std::stod(cols[1]), hi = std::stod(cols[2]);
    CHECK_LE(lo, hi);
    CHECK_GT(lo, 0.99);
    bool is_pal = std::find(pal.begin(), pal.end(), l) != pal.end();
    CHECK_EQ(cols[3], is_pal ? "1" : "0");
    if (cols.size() == 5 && !cols[4].empty()) {
      ++marked;
      CHECK_EQ(cols[4].substr(0, 3), "qp:");
    }
  }
  CHECK_EQ(rows, 12);
  CHECK_GT(marked, 0);
}
