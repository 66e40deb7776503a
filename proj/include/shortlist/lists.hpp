#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "json.hpp"
#include "shortlist/bitlabel.hpp"
#include "shortlist/machine.hpp"

namespace shortlist {

// Decompressor-program list for x: the direct-print program, every loader
// program shorter than the tiling threshold, and one entry per graph edge of
// x in each in-range session graph. Raw order, duplicate edges retained.
std::vector<BitLabel> list_of(const GraphStack& stack, const BitLabel& x);

// The machine-program list: list_of with the decompressor dispatch bit
// prepended, first-occurrence deduplicated.
std::vector<BitLabel> f_of(const GraphStack& stack, const BitLabel& x);

struct ListBreakdown {
  std::uint64_t direct = 1;
  std::uint64_t loaders = 0;                    // programs p with 2^|p| < |x|
  std::map<int, std::uint64_t> degree_per_k;    // graph edges per session k
  std::uint64_t raw_total = 0;                  // sum of the three parts
  nlohmann::json to_json() const;
};
ListBreakdown list_breakdown(const GraphStack& stack, const BitLabel& x);

// Session range of x: k from ceil(log2 |x|) to min(|x|, k_max), keeping only
// k with |x| <= cap(k).
std::vector<int> session_range(const GraphStack& stack, const BitLabel& x);

struct BruteForceResult {
  int c = -1;                      // minimal program length
  BitLabel witness;                // lexicographically first at that length
  std::uint64_t programs_tried = 0;
};

// Minimal-program search, ascending length then lex; the direct-print
// program bounds the search at |x| + 3.
BruteForceResult brute_force_C(const StandardMachine& m, const BitLabel& x);
BruteForceResult brute_force_C_serial(const StandardMachine& m,
                                      const BitLabel& x);

struct XReport {
  BitLabel x;
  int c_u = -1;
  BitLabel witness;
  std::uint64_t list_size = 0;  // deduplicated machine-program list
  int best_in_list = -1;        // shortest list entry printing x
  int slack = -1;               // best_in_list - c_u
  std::map<int, std::uint64_t> discards_per_k;
  nlohmann::json to_json() const;
};
XReport analyze_x(const StandardMachine& m, const BitLabel& x);

}  // namespace shortlist
