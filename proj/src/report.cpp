#include "palcf/report.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "palcf/cf_core.hpp"
#include "palcf/enclose.hpp"
#include "palcf/numeric.hpp"
#include "palcf/words.hpp"

namespace palcf {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json interval_json(const RatInterval& iv) {
  return ordered_json::array({to_sci(iv.lo), to_sci(iv.hi)});
}

ordered_json evidence_json(const EvidenceItem& e) {
  ordered_json j;
  j["label"] = e.label;
  if (e.n >= 0)
    j["n"] = e.n;
  else
    j["n"] = nullptr;
  j["lhs"] = e.lhs;
  j["rhs"] = e.rhs;
  if (e.margin_log2 == kNoMargin)
    j["margin_log2"] = nullptr;
  else
    j["margin_log2"] = e.margin_log2;
  j["satisfied"] = e.status == EvidenceStatus::Satisfied;
  j["kind"] = to_string(e.kind);
  j["status"] = to_string(e.status);
  j["note"] = e.note;
  return j;
}

ordered_json report_json(const CriterionReport& r) {
  ordered_json j;
  j["criterion"] = r.criterion;
  j["word_spec"] = r.word_spec;
  j["prefix_len"] = r.prefix_len;
  j["precision_bits"] = r.precision_bits;
  ordered_json wit = ordered_json::array();
  for (const Witness& w : r.witnesses) {
    ordered_json one;
    one["r"] = w.r;
    one["u"] = w.u;
    one["v"] = w.v;
    wit.push_back(std::move(one));
  }
  j["witnesses"] = std::move(wit);
  ordered_json ev = ordered_json::array();
  for (const EvidenceItem& e : r.evidence) ev.push_back(evidence_json(e));
  j["evidence"] = std::move(ev);
  if (r.growth) {
    ordered_json g;
    g["window"] = ordered_json::array({r.growth->window_lo, r.growth->window_hi});
    g["m_hat"] = interval_json(r.growth->m_hat);
    g["M_hat"] = interval_json(r.growth->M_hat);
    g["sqrt2_floor_ok"] = r.growth->sqrt2_floor_ok;
    g["growth_floor_ok"] = r.growth->growth_floor_ok;
    g["note"] = r.growth->note;
    j["growth"] = std::move(g);
  } else {
    j["growth"] = nullptr;
  }
  j["verdict"] = r.verdict;
  j["disclaimer"] = r.disclaimer;
  return j;
}

}  // namespace

std::string render_report(const CriterionReport& r) { return report_json(r).dump(2) + "\n"; }

void write_report_file(const CriterionReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("write_report_file: cannot open " + path);
  out << render_report(r);
  if (!out) throw std::runtime_error("write_report_file: write failed for " + path);
}

void write_csv_curve(const std::string& path, const Word& w, size_t limit,
                     unsigned precision_bits, const std::map<size_t, std::string>& markers) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("write_csv_curve: cannot open " + path);
  if (limit > w.size()) limit = w.size();

  std::set<size_t> pal;
  for (size_t n : palindromic_prefix_lengths(w))
    if (n <= limit) pal.insert(n);

  out << "l,root_lo,root_hi,pal_prefix,witness\n";
  ConvergentScanner scan;
  for (size_t l = 1; l <= limit; ++l) {
    scan.advance(w.at(l));
    RatInterval root = root_enclosure(Rat(scan.q()), l, precision_bits);
    out << l << ',' << to_sci(root.lo) << ',' << to_sci(root.hi) << ','
        << (pal.count(l) ? 1 : 0) << ',';
    auto it = markers.find(l);
    if (it != markers.end()) out << it->second;
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv_curve: write failed for " + path);
}

}  // namespace palcf
