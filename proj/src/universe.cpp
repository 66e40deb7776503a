#include "shortlist/universe.hpp"

#include <algorithm>
#include <stdexcept>

namespace shortlist {

UniverseSpec UniverseSpec::range(int min_len, int max_len) {
  if (min_len < 0 || max_len < min_len || max_len > 62)
    throw std::invalid_argument("universe: bad length range");
  UniverseSpec u;
  u.min_len_ = min_len;
  u.max_len_ = max_len;
  u.cardinality_ = 0;
  for (int n = min_len; n <= max_len; ++n)
    u.cardinality_ += std::uint64_t{1} << n;
  return u;
}

UniverseSpec UniverseSpec::explicit_set(std::vector<BitLabel> labels) {
  if (labels.empty())
    throw std::invalid_argument("universe: explicit set must be nonempty");
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw std::invalid_argument("universe: duplicate label");
  UniverseSpec u;
  u.is_explicit_ = true;
  u.labels_ = std::move(labels);
  u.cardinality_ = u.labels_.size();
  u.min_len_ = u.labels_.front().length();
  u.max_len_ = u.labels_.back().length();
  return u;
}

BitLabel UniverseSpec::at(std::uint64_t index) const {
  if (index >= cardinality_) throw std::out_of_range("universe: index");
  if (is_explicit_) return labels_[index];
  for (int n = min_len_; n <= max_len_; ++n) {
    std::uint64_t block = std::uint64_t{1} << n;
    if (index < block) return BitLabel(index, n);
    index -= block;
  }
  throw std::logic_error("universe: unreachable");
}

std::uint64_t UniverseSpec::index_of(const BitLabel& label) const {
  if (is_explicit_) {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || !(*it == label))
      throw std::out_of_range("universe: label not in universe");
    return static_cast<std::uint64_t>(it - labels_.begin());
  }
  if (label.length() < min_len_ || label.length() > max_len_)
    throw std::out_of_range("universe: label not in universe");
  std::uint64_t base = 0;
  for (int n = min_len_; n < label.length(); ++n)
    base += std::uint64_t{1} << n;
  return base + label.value();
}

bool UniverseSpec::contains(const BitLabel& label) const {
  if (is_explicit_)
    return std::binary_search(labels_.begin(), labels_.end(), label);
  return label.length() >= min_len_ && label.length() <= max_len_;
}

bool UniverseSpec::operator==(const UniverseSpec& o) const {
  if (is_explicit_ != o.is_explicit_) {
    // A range and an explicit set may still be the same set of labels;
    // compare by enumeration only when sizes agree.
    if (cardinality_ != o.cardinality_) return false;
    for (std::uint64_t i = 0; i < cardinality_; ++i)
      if (!(at(i) == o.at(i))) return false;
    return true;
  }
  if (is_explicit_) return labels_ == o.labels_;
  return min_len_ == o.min_len_ && max_len_ == o.max_len_;
}

bool UniverseSpec::overlaps(const UniverseSpec& a, const UniverseSpec& b) {
  const UniverseSpec& small = a.cardinality() <= b.cardinality() ? a : b;
  const UniverseSpec& big = a.cardinality() <= b.cardinality() ? b : a;
  if (small.is_range() && big.is_range())
    return small.max_len() >= big.min_len() && big.max_len() >= small.min_len();
  for (std::uint64_t i = 0; i < small.cardinality(); ++i)
    if (big.contains(small.at(i))) return true;
  return false;
}

}  // namespace shortlist
