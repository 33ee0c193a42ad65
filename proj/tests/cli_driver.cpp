// Drives the installed CLI binary end to end through a shell: exit codes,
// file outputs, report determinism, and the interrupt/resume contract.
// The binary path is baked in at configure time as PALCF_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "palcf/generators.hpp"
#include "palcf/word.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

const std::string kCli = PALCF_CLI_PATH;

fs::path work_dir() {
  fs::path p = fs::current_path() / "cli_driver_tmp";
  fs::create_directories(p);
  return p;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

int run(const std::string& args, const std::string& redirect = " >/dev/null 2>&1") {
  int rc = std::system((kCli + " " + args + redirect).c_str());
  REQUIRE_NE(rc, -1);
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE_MESSAGE(bool(in), "cannot open ", p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen writes the documented word-file format") {
  fs::path out = work_dir() / "gen_runs.word";
  CHECK_EQ(run("gen --spec 'runs:1^3,2^2' --out " + q(out)), 0);
  CHECK_EQ(slurp(out), "# spec: runs:1^3,2^2\n# count: 5\n1\n1\n1\n2\n2\n");

  fs::path tm = work_dir() / "gen_tm.word";
  CHECK_EQ(run("gen --spec 'tm(1,2)' --n 8 --out " + q(tm)), 0);
  palcf::WordFile wf = palcf::read_word_file(tm.string());
  CHECK_EQ(wf.spec_label, "tm(1,2)");
  CHECK_EQ(wf.word, palcf::thue_morse_word(palcf::Int(1), palcf::Int(2), 8));

  fs::path t5 = work_dir() / "gen_thm5.word";
  CHECK_EQ(run("gen --spec 'thm5(1,3)' --stages 2 --out " + q(t5)), 0);
  palcf::WordFile five = palcf::read_word_file(t5.string());
  CHECK_EQ(five.spec_label, "thm5(1,3;stages=2)");
  CHECK_EQ(five.word.size(), 27);

  // Unbounded families need an explicit length.
  CHECK_EQ(run("gen --spec 'tm(1,2)' --out " + q(work_dir() / "nope.word")), 4);
}

TEST_CASE("analyze exit codes distinguish the four outcomes") {
  fs::path out = work_dir() / "tm_thm1.json";
  CHECK_EQ(run("analyze --spec 'tm(1,2)' --criterion thm1 --prefix 2000 --out " + q(out)), 0);
  ordered_json j = ordered_json::parse(slurp(out));
  CHECK_EQ(j["criterion"], "thm1");
  CHECK_EQ(j["verdict"], "hypotheses-verified-up-to-prefix");

  // Hypothesis violation is a legitimate verdict: exit 0, verdict names it.
  fs::path flat = work_dir() / "flat_thm4.json";
  CHECK_EQ(run("analyze --spec 'baker(1,2;gamma=1,seed=1)' --criterion thm4 --prefix 12 --out " +
               q(flat)),
           0);
  CHECK_EQ(ordered_json::parse(slurp(flat))["verdict"], "violated-at(1)");

  // Theorem-backed failure (corrupted construction) is an internal
  // inconsistency: exit 1.
  CHECK_EQ(run("analyze --spec 'thm5(1,3)' --criterion thm5 --mutate 14=2404"), 1);

  // No witnesses on a strictly increasing word: inconclusive, exit 2.
  CHECK_EQ(run("analyze --spec 'explicit:[1,2,3,4,5,6,7,8,9,10,11,12]' --criterion thm2 "
               "--prefix 12"),
           2);

  // Usage and grammar problems: exit 4.
  CHECK_EQ(run("analyze --spec 'bogus:' --criterion thm1"), 4);
  CHECK_EQ(run("analyze --spec 'tm(1,2)' --criterion thm9"), 4);
  CHECK_EQ(run("analyze --spec 'tm(1,2)'"), 4);
  CHECK_EQ(run("analyze --spec 'tm(1,2)' --criterion thm1 --no-such-flag 1"), 4);
  CHECK_EQ(run("analyze --spec 'tm(1,2)' --criterion thm1 --prefix 9"), 4);
}

TEST_CASE("reports are deterministic and stdout matches the file output") {
  fs::path a = work_dir() / "det_a.json", b = work_dir() / "det_b.json",
           c = work_dir() / "det_stdout.json";
  std::string cmd = "analyze --spec 'baker(1,2;gamma=2,seed=1)' --criterion thm3 --prefix 300";
  CHECK_EQ(run(cmd + " --out " + q(a)), 0);
  CHECK_EQ(run(cmd + " --out " + q(b)), 0);
  CHECK_EQ(slurp(a), slurp(b));

  CHECK_EQ(run(cmd, " > " + q(c) + " 2>/dev/null"), 0);
  CHECK_EQ(slurp(a), slurp(c));
}

TEST_CASE("interrupted scans resume to byte-identical reports") {
  fs::path direct = work_dir() / "res_direct.json", resumed = work_dir() / "res_resumed.json",
           cp = work_dir() / "res_cp.json";
  std::string base = "--spec 'tm(1,2)' --criterion thm1 --prefix 2500";
  CHECK_EQ(run("analyze " + base + " --out " + q(direct)), 0);
  CHECK_EQ(run("analyze " + base + " --checkpoint " + q(cp) + " --halt-after 1200"), 3);
  CHECK_EQ(run("resume --checkpoint " + q(cp) + " --out " + q(resumed)), 0);
  CHECK_EQ(slurp(direct), slurp(resumed));

  // Cross-check flags guard against resuming the wrong run.
  CHECK_EQ(run("analyze " + base + " --checkpoint " + q(cp) + " --halt-after 1200"), 3);
  CHECK_EQ(run("resume --checkpoint " + q(cp) + " --spec 'tm(1,3)'"), 4);
  CHECK_EQ(run("resume --checkpoint " + q(cp) + " --criterion thm2"), 4);
  CHECK_EQ(run("resume --checkpoint " + q(work_dir() / "missing_cp.json")), 4);
}

TEST_CASE("the precision environment variable feeds the default") {
  fs::path out = work_dir() / "env_precision.json";
  int rc = std::system(("PALCF_PRECISION_BITS=256 " + kCli +
                        " analyze --spec 'runs:1^40' --criterion thm1 --prefix 40 --out " +
                        q(out) + " >/dev/null 2>&1")
                           .c_str());
  REQUIRE_NE(rc, -1);
  CHECK_EQ(WEXITSTATUS(rc), 0);
  CHECK_EQ(ordered_json::parse(slurp(out))["precision_bits"], 256);

  // An explicit flag still wins over the environment.
  rc = std::system(("PALCF_PRECISION_BITS=256 " + kCli +
                    " analyze --spec 'runs:1^40' --criterion thm1 --prefix 40 "
                    "--precision-bits 128 --out " +
                    q(out) + " >/dev/null 2>&1")
                       .c_str());
  REQUIRE_NE(rc, -1);
  CHECK_EQ(WEXITSTATUS(rc), 0);
  CHECK_EQ(ordered_json::parse(slurp(out))["precision_bits"], 128);
}

TEST_CASE("csv flag emits the curve next to the report") {
  fs::path csv = work_dir() / "curve.csv";
  CHECK_EQ(run("analyze --spec 'tm(1,2)' --criterion thm1 --prefix 64 --csv " + q(csv)), 0);
  std::istringstream in(slurp(csv));
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK_EQ(header, "l,root_lo,root_hi,pal_prefix,witness");
  size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK_EQ(rows, 64);
}
