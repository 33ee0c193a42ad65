#pragma once

#include <string>

#include "palcf/checkpoint.hpp"
#include "palcf/criteria.hpp"
#include "palcf/seqspec.hpp"

namespace palcf {

// One analysis run: materialize the word from its spec, scan the convergent
// recurrence once (capturing rows only at the indices the criterion needs),
// run the criterion checker on the captured rows, and emit the report and
// optional CSV curve. Long scans checkpoint periodically and can be halted
// at a fixed row for a deterministic interrupt/resume test: the resumed run
// produces a byte-identical report.

struct RunConfig {
  std::string spec_text;  // sequence-spec grammar string
  std::string criterion;  // thm1|thm2|thm3|thm4|thm5|lemma6|products
  size_t prefix = 2000;
  unsigned precision_bits = 128;
  Rat w_max = Rat(3);       // quasi-palindrome order cap (thm2/thm3/products)
  Rat wprime_min = Rat(1);  // offset-ratio floor u >= wprime_min * r (thm3)
  size_t u_min = 1;         // minimum mirrored-block length
  GrowthWindow window;      // growth-exponent window; 0,0 = automatic
  std::string out_path;     // report JSON file; empty = no file
  std::string csv_path;     // curve CSV file (scan criteria only)
  std::string checkpoint_path;
  size_t halt_after = 0;  // stop the scan after this absolute row; 0 = never
  std::string mutate;     // "idx=value" negative-control corruption
  size_t stages = 0;      // thm5 stage count / lemma6 stage index; 0 = default
};

// Throws std::invalid_argument on out-of-range or inconsistent settings.
void validate_config(const RunConfig& cfg);

struct RunOutcome {
  CriterionReport report;  // default-initialized when halted
  bool halted = false;
  int exit_code = 0;  // report exit code, or 3 when halted at a checkpoint
};

RunOutcome run_analyze(const RunConfig& cfg);

// Continue an interrupted scan. Only the output paths, a later halt_after,
// and cross-check fields (spec_text, criterion; empty = skip the check) are
// read from `overrides`; everything else comes from the checkpoint. Throws
// std::runtime_error when the checkpoint, the cross-check fields, or the
// regenerated word disagree.
RunOutcome run_resume(const std::string& checkpoint_path, const RunConfig& overrides);

}  // namespace palcf
