#pragma once

#include <map>
#include <string>

#include "palcf/criteria.hpp"

namespace palcf {

// Deterministic serialization of criterion reports. The JSON layout is fixed
// (key order, two-space indent, every numeric endpoint rendered through the
// truncating scientific formatter), so byte comparison of two reports is a
// meaningful equality test.
//
// Schema: criterion, word_spec, prefix_len, precision_bits, witnesses[],
// evidence[{label, n, lhs, rhs, margin_log2, satisfied, kind, status, note}],
// growth{window, m_hat, M_hat, floors, note} (null when not computed),
// verdict, disclaimer.

std::string render_report(const CriterionReport& r);

void write_report_file(const CriterionReport& r, const std::string& path);

// Plot-ready curve: one row per index l = 1..limit with the certified
// enclosure of q_l^(1/l), a palindromic-prefix flag, and witness markers.
// Markers must not contain commas; multiple markers at one index are joined
// with ';' by the caller.
void write_csv_curve(const std::string& path, const Word& w, size_t limit,
                     unsigned precision_bits, const std::map<size_t, std::string>& markers);

}  // namespace palcf
