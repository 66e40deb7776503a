#pragma once

#include <cstdint>
#include <functional>
#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shortlist {

// A bit string of length 0..64. Bits are stored numerically with the first
// character of the string as the most significant bit, so for equal lengths
// the numeric order is the lexicographic order. The canonical order used
// throughout is (length, lexicographic).
class BitLabel {
 public:
  BitLabel() = default;  // the empty label

  BitLabel(std::uint64_t value, int length) : value_(value), length_(length) {
    if (length < 0 || length > 64)
      throw std::invalid_argument("BitLabel: length must be in [0,64]");
    if (length < 64 && value >= (std::uint64_t{1} << length))
      throw std::invalid_argument("BitLabel: value does not fit in length");
  }

  static BitLabel parse(std::string_view s) {
    if (s.size() > 64) throw std::invalid_argument("BitLabel: too long");
    std::uint64_t v = 0;
    for (char ch : s) {
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("BitLabel: invalid character");
      v = (v << 1) | static_cast<std::uint64_t>(ch - '0');
    }
    return BitLabel(v, static_cast<int>(s.size()));
  }

  int length() const { return length_; }
  std::uint64_t value() const { return value_; }
  bool empty() const { return length_ == 0; }

  // i = 0 addresses the leading (most significant) bit.
  bool bit(int i) const {
    if (i < 0 || i >= length_) throw std::out_of_range("BitLabel::bit");
    return (value_ >> (length_ - 1 - i)) & 1u;
  }

  // First n bits.
  BitLabel prefix(int n) const {
    if (n < 0 || n > length_) throw std::out_of_range("BitLabel::prefix");
    return BitLabel(n == 0 ? 0 : value_ >> (length_ - n), n);
  }

  // Drop the first n bits.
  BitLabel drop(int n) const {
    if (n < 0 || n > length_) throw std::out_of_range("BitLabel::drop");
    int rest = length_ - n;
    std::uint64_t mask = rest == 64 ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << rest) - 1;
    return BitLabel(value_ & mask, rest);
  }

  static BitLabel cat(const BitLabel& a, const BitLabel& b) {
    if (a.length_ + b.length_ > 64)
      throw std::invalid_argument("BitLabel: concatenation exceeds 64 bits");
    if (b.length_ == 0) return a;
    return BitLabel((a.value_ << b.length_) | b.value_, a.length_ + b.length_);
  }

  static BitLabel zeros(int n) { return BitLabel(0, n); }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(length_), '0');
    for (int i = 0; i < length_; ++i)
      if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
  }

  friend bool operator==(const BitLabel& a, const BitLabel& b) {
    return a.length_ == b.length_ && a.value_ == b.value_;
  }
  friend bool operator!=(const BitLabel& a, const BitLabel& b) {
    return !(a == b);
  }
  // (length, lexicographic); lexicographic == numeric at equal length.
  friend bool operator<(const BitLabel& a, const BitLabel& b) {
    if (a.length_ != b.length_) return a.length_ < b.length_;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const BitLabel& a, const BitLabel& b) {
    return a == b || a < b;
  }

 private:
  std::uint64_t value_ = 0;
  int length_ = 0;
};

struct BitLabelHash {
  std::size_t operator()(const BitLabel& l) const {
    std::uint64_t h = l.value() * 0x9e3779b97f4a7c15ull;
    h ^= static_cast<std::uint64_t>(l.length()) + (h >> 31);
    return static_cast<std::size_t>(h * 0xbf58476d1ce4e5b9ull);
  }
};

// splitmix64: the fixed pseudorandom stream used for all seeded choices.
// Recorded in manifests as generator "splitmix64-v1".
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Keyed sub-stream: one splitmix64 step of the key itself, so consecutive
// indices give decorrelated states.
inline std::uint64_t splitmix64_key(std::uint64_t key) {
  return splitmix64(key);
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

// Deterministic sub-seed derivation for named build steps.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
  std::uint64_t s = base ^ fnv1a64(tag);
  return splitmix64(s);
}

}  // namespace shortlist

template <>
struct std::hash<shortlist::BitLabel> {
  std::size_t operator()(const shortlist::BitLabel& l) const {
    return shortlist::BitLabelHash{}(l);
  }
};
