// Command-line front end: generate quotient words from sequence specs, run
// criterion analyses, and resume interrupted scans from checkpoints.
//
// Exit codes: 0 verdict produced (verified or hypothesis-violated),
//             1 a theorem-backed certificate failed (internal inconsistency),
//             2 inconclusive at the configured precision/depth,
//             3 scan halted at --halt-after with a checkpoint written,
//             4 usage, spec-grammar, configuration, or I/O error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "palcf/pipeline.hpp"
#include "palcf/report.hpp"
#include "palcf/seqspec.hpp"

using palcf::RunConfig;
using palcf::RunOutcome;

int main(int argc, char** argv) {
  CLI::App app{"palindromic continued-fraction certificates"};
  app.require_subcommand(1);

  std::string spec_text, criterion, out_path, csv_path, checkpoint_path, window_text;
  std::string w_max_text = "3", wprime_min_text = "1", mutate_text;
  size_t n = 0, prefix = 2000, u_min = 1, halt_after = 0, stages = 0;
  unsigned precision_bits = 128;

  CLI::App* gen = app.add_subcommand("gen", "materialize a quotient word into a file");
  gen->add_option("--spec", spec_text, "sequence spec")->required();
  gen->add_option("--n", n, "number of quotients (0 = the spec's natural length)");
  gen->add_option("--out", out_path, "output word file")->required();
  gen->add_option("--stages", stages, "stage count for thm5 specs (0 = spec default)");

  auto add_analysis_flags = [&](CLI::App* cmd, bool fresh) {
    if (fresh) {
      cmd->add_option("--spec", spec_text, "sequence spec")->required();
      cmd->add_option("--criterion", criterion, "criterion to certify")
          ->required()
          ->check(CLI::IsMember({"thm1", "thm2", "thm3", "thm4", "thm5", "lemma6", "products"}));
      cmd->add_option("--prefix", prefix, "prefix cap (>= 10)");
      cmd->add_option("--precision-bits", precision_bits, "enclosure precision (>= 64)")
          ->envname("PALCF_PRECISION_BITS");
      cmd->add_option("--w-max", w_max_text, "quasi-palindrome order cap (rational)");
      cmd->add_option("--wprime-min", wprime_min_text, "offset-ratio floor (rational)");
      cmd->add_option("--u-min", u_min, "minimum mirrored-block length");
      cmd->add_option("--window", window_text, "growth window LO:HI");
      cmd->add_option("--mutate", mutate_text, "corrupt one quotient: IDX=VALUE");
      cmd->add_option("--stages", stages, "thm5 stage count / lemma6 stage (0 = default)");
    } else {
      cmd->add_option("--spec", spec_text, "cross-check against the checkpoint's spec");
      cmd->add_option("--criterion", criterion, "cross-check against the checkpoint's criterion");
    }
    cmd->add_option("--out", out_path, "report JSON file (default: print to stdout)");
    cmd->add_option("--csv", csv_path, "growth/witness curve CSV file");
    if (fresh)
      cmd->add_option("--checkpoint", checkpoint_path, "checkpoint file for long scans");
    else
      cmd->add_option("--checkpoint", checkpoint_path, "checkpoint file to resume")->required();
    cmd->add_option("--halt-after", halt_after,
                    "stop the scan after this row and write the checkpoint");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "run a criterion and emit its report");
  add_analysis_flags(analyze, true);
  CLI::App* resume = app.add_subcommand("resume", "continue a checkpointed scan");
  add_analysis_flags(resume, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  try {
    if (gen->parsed()) {
      palcf::SeqSpec spec = palcf::parse_spec(spec_text);
      if (stages > 0 && spec.kind == palcf::SeqSpec::Kind::Theorem5) spec.stages = stages;
      palcf::Word w = palcf::materialize(spec, n);
      palcf::write_word_file(out_path, w, palcf::canonical_spec(spec));
      std::cout << "wrote " << w.size() << " quotients to " << out_path << "\n";
      return 0;
    }

    RunConfig cfg;
    cfg.spec_text = spec_text;
    cfg.criterion = criterion;
    cfg.prefix = prefix;
    cfg.precision_bits = precision_bits;
    cfg.w_max = palcf::parse_rat(w_max_text);
    cfg.wprime_min = palcf::parse_rat(wprime_min_text);
    cfg.u_min = u_min;
    if (!window_text.empty()) {
      size_t colon = window_text.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("window: expected LO:HI, got '" + window_text + "'");
      cfg.window.lo = std::stoull(window_text.substr(0, colon));
      cfg.window.hi = std::stoull(window_text.substr(colon + 1));
    }
    cfg.out_path = out_path;
    cfg.csv_path = csv_path;
    cfg.checkpoint_path = checkpoint_path;
    cfg.halt_after = halt_after;
    cfg.mutate = mutate_text;
    cfg.stages = stages;

    RunOutcome outcome = analyze->parsed() ? palcf::run_analyze(cfg)
                                           : palcf::run_resume(checkpoint_path, cfg);
    if (outcome.halted) {
      std::cout << "halted after row " << halt_after << "; checkpoint written to "
                << checkpoint_path << "\n";
      return 3;
    }
    if (cfg.out_path.empty()) {
      std::cout << palcf::render_report(outcome.report);
    } else {
      std::cout << "verdict: " << outcome.report.verdict << "; report written to "
                << cfg.out_path << "\n";
    }
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
