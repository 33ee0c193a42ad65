#include "palcf/checkpoint.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "palcf/numeric.hpp"

namespace palcf {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kFormatTag = "palcf-checkpoint/1";

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

ordered_json payload_json(const ScanCheckpoint& c) {
  ordered_json j;
  j["format"] = kFormatTag;
  j["spec"] = c.spec;
  j["mutate"] = c.mutate;
  j["criterion"] = c.criterion;
  j["prefix_cap"] = c.prefix_cap;
  j["precision_bits"] = c.precision_bits;
  j["w_max"] = c.w_max;
  j["wprime_min"] = c.wprime_min;
  j["u_min"] = c.u_min;
  j["window"] = ordered_json::array({c.window_lo, c.window_hi});
  j["word_fingerprint"] = hex64(c.word_fingerprint);
  j["index"] = c.index;
  j["p"] = c.p.get_str();
  j["p_prev"] = c.p_prev.get_str();
  j["q"] = c.q.get_str();
  j["q_prev"] = c.q_prev.get_str();
  j["pending"] = c.pending;
  ordered_json rows = ordered_json::array();
  for (const TailSnapshot& s : c.taken) {
    ordered_json one;
    one["l"] = s.l;
    one["p"] = s.p.get_str();
    one["q"] = s.q.get_str();
    one["p_prev"] = s.p_prev.get_str();
    one["q_prev"] = s.q_prev.get_str();
    rows.push_back(std::move(one));
  }
  j["taken"] = std::move(rows);
  return j;
}

uint64_t parse_hex64(const std::string& s) {
  if (s.size() != 16) throw std::runtime_error("checkpoint: malformed 64-bit hex field");
  uint64_t v = 0;
  for (char ch : s) {
    v <<= 4;
    if (ch >= '0' && ch <= '9')
      v |= static_cast<uint64_t>(ch - '0');
    else if (ch >= 'a' && ch <= 'f')
      v |= static_cast<uint64_t>(ch - 'a' + 10);
    else
      throw std::runtime_error("checkpoint: malformed 64-bit hex field");
  }
  return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const ScanCheckpoint& c) {
  ordered_json j = payload_json(c);
  j["checksum"] = hex64(fnv1a64(j.dump()));
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("save_checkpoint: cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("save_checkpoint: write failed for " + path);
}

ScanCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_checkpoint: cannot open " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_checkpoint: malformed JSON in " + path + ": " + e.what());
  }

  try {
    if (j.at("format").get<std::string>() != kFormatTag)
      throw std::runtime_error("load_checkpoint: unknown format tag in " + path);

    std::string stored = j.at("checksum").get<std::string>();
    j.erase("checksum");
    if (parse_hex64(stored) != fnv1a64(j.dump()))
      throw std::runtime_error("load_checkpoint: checksum mismatch in " + path +
                               "; refusing to resume");

    ScanCheckpoint c;
    c.spec = j.at("spec").get<std::string>();
    c.mutate = j.at("mutate").get<std::string>();
    c.criterion = j.at("criterion").get<std::string>();
    c.prefix_cap = j.at("prefix_cap").get<size_t>();
    c.precision_bits = j.at("precision_bits").get<unsigned>();
    c.w_max = j.at("w_max").get<std::string>();
    c.wprime_min = j.at("wprime_min").get<std::string>();
    c.u_min = j.at("u_min").get<size_t>();
    c.window_lo = j.at("window").at(0).get<size_t>();
    c.window_hi = j.at("window").at(1).get<size_t>();
    c.word_fingerprint = parse_hex64(j.at("word_fingerprint").get<std::string>());
    c.index = j.at("index").get<size_t>();
    c.p = parse_int(j.at("p").get<std::string>());
    c.p_prev = parse_int(j.at("p_prev").get<std::string>());
    c.q = parse_int(j.at("q").get<std::string>());
    c.q_prev = parse_int(j.at("q_prev").get<std::string>());
    c.pending = j.at("pending").get<std::vector<size_t>>();
    for (const auto& one : j.at("taken")) {
      TailSnapshot s;
      s.l = one.at("l").get<size_t>();
      s.p = parse_int(one.at("p").get<std::string>());
      s.q = parse_int(one.at("q").get<std::string>());
      s.p_prev = parse_int(one.at("p_prev").get<std::string>());
      s.q_prev = parse_int(one.at("q_prev").get<std::string>());
      c.taken.push_back(std::move(s));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_checkpoint: missing or mistyped field in " + path + ": " +
                             e.what());
  }
}

}  // namespace palcf
