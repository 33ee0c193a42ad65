#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "palcf/criteria.hpp"

namespace palcf {

// Persistent state of an interrupted convergent scan. The file holds the
// run's full configuration, the O(1) recurrence tail (the last computed row
// and its predecessor), the interest indices still ahead, and the snapshot
// rows captured so far; the word itself is regenerated from the spec on
// resume and cross-checked by fingerprint. A checksum over the payload
// guards against truncation and edits; a mismatch refuses to resume.

struct ScanCheckpoint {
  std::string spec;       // canonical spec string
  std::string mutate;     // "idx=value", empty when the word is untouched
  std::string criterion;  // thm1 | thm2 | thm3 | products
  size_t prefix_cap = 0;
  unsigned precision_bits = 0;
  std::string w_max;       // canonical rational strings; empty = unused
  std::string wprime_min;
  size_t u_min = 1;
  size_t window_lo = 0, window_hi = 0;
  uint64_t word_fingerprint = 0;

  // Scanner registers after computing row `index` (0 = nothing scanned yet).
  size_t index = 0;
  Int p{0}, p_prev{1}, q{1}, q_prev{0};

  std::vector<size_t> pending;       // interest indices > index, ascending
  std::vector<TailSnapshot> taken;   // snapshots at interest indices <= index
};

void save_checkpoint(const std::string& path, const ScanCheckpoint& c);

// Parses and checksum-verifies. Throws std::runtime_error on I/O failure,
// malformed JSON, a wrong format tag, or a checksum mismatch.
ScanCheckpoint load_checkpoint(const std::string& path);

}  // namespace palcf
