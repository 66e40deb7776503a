#pragma once

#include <cstdint>
#include <vector>

#include "shortlist/bitlabel.hpp"

namespace shortlist {

// A finite set of bit labels, enumerable in (length, lexicographic) order.
// Three shapes cover everything the builders produce:
//   - Range: all strings with length in [min_len, max_len]
//     (a single length when min_len == max_len, i.e. a cube {0,1}^n)
//   - Explicit: an arbitrary sorted list of labels
class UniverseSpec {
 public:
  static UniverseSpec cube(int len) { return range(len, len); }
  static UniverseSpec range(int min_len, int max_len);
  static UniverseSpec explicit_set(std::vector<BitLabel> labels);

  std::uint64_t cardinality() const { return cardinality_; }
  BitLabel at(std::uint64_t index) const;
  std::uint64_t index_of(const BitLabel& label) const;
  bool contains(const BitLabel& label) const;

  bool is_range() const { return !is_explicit_; }
  // Only meaningful for range universes.
  int min_len() const { return min_len_; }
  int max_len() const { return max_len_; }
  // A cube is a single-length range.
  bool is_cube() const { return is_range() && min_len_ == max_len_; }

  bool operator==(const UniverseSpec& o) const;

  // True iff the two universes share at least one label.
  static bool overlaps(const UniverseSpec& a, const UniverseSpec& b);

 private:
  UniverseSpec() = default;

  bool is_explicit_ = false;
  int min_len_ = 0;
  int max_len_ = 0;
  std::vector<BitLabel> labels_;  // sorted, explicit universes only
  std::uint64_t cardinality_ = 0;
};

}  // namespace shortlist
