#include "shortlist/combinators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shortlist {

namespace {

constexpr std::uint64_t kMaxExplicitUniverse = std::uint64_t{1} << 20;

int ceil_log2(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("ceil_log2(0)");
  return std::bit_width(n - 1);
}

std::vector<BitLabel> enumerate_universe(const UniverseSpec& u) {
  if (u.cardinality() > kMaxExplicitUniverse)
    throw std::runtime_error("universe too large to enumerate");
  std::vector<BitLabel> out;
  out.reserve(u.cardinality());
  for (std::uint64_t i = 0; i < u.cardinality(); ++i) out.push_back(u.at(i));
  return out;
}

UniverseSpec union_left(const std::vector<BipartiteGraph>& parts) {
  if (parts.empty()) throw std::invalid_argument("union of zero parts");
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a + 1; b < parts.size(); ++b)
      if (UniverseSpec::overlaps(parts[a]->left(), parts[b]->left()))
        throw std::invalid_argument("union requires disjoint lefts");
  bool all_ranges = true;
  for (const auto& p : parts)
    if (!p->left().is_range()) all_ranges = false;
  if (all_ranges) {
    std::vector<std::pair<int, int>> spans;
    spans.reserve(parts.size());
    for (const auto& p : parts)
      spans.emplace_back(p->left().min_len(), p->left().max_len());
    std::sort(spans.begin(), spans.end());
    bool contiguous = true;
    for (std::size_t i = 1; i < spans.size(); ++i)
      if (spans[i].first != spans[i - 1].second + 1) contiguous = false;
    if (contiguous)
      return UniverseSpec::range(spans.front().first, spans.back().second);
  }
  std::vector<BitLabel> labels;
  for (const auto& p : parts) {
    auto ls = enumerate_universe(p->left());
    labels.insert(labels.end(), ls.begin(), ls.end());
  }
  return UniverseSpec::explicit_set(std::move(labels));
}

UniverseSpec integer_universe(std::uint64_t total, int width) {
  if (total == (std::uint64_t{1} << width)) return UniverseSpec::cube(width);
  if (total > kMaxExplicitUniverse)
    throw std::runtime_error("union right side too large");
  std::vector<BitLabel> labels;
  labels.reserve(total);
  for (std::uint64_t v = 0; v < total; ++v)
    labels.emplace_back(v, width);
  return UniverseSpec::explicit_set(std::move(labels));
}

class UnionGraph final : public GraphImpl {
 public:
  explicit UnionGraph(std::vector<BipartiteGraph> parts)
      : GraphImpl(union_left(parts), UniverseSpec::cube(1)),
        parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("union of zero parts");
    std::uint64_t total = 0;
    for (const auto& p : parts_) {
      offsets_.push_back(total);
      total += p->right().cardinality();
    }
    width_ = std::max(1, ceil_log2(total));
    right_ = integer_universe(total, width_);
    int rd = parts_.front()->regular_degree();
    for (const auto& p : parts_)
      if (p->regular_degree() != rd) rd = -1;
    regular_degree_ = rd;
    nlohmann::json part_structs = nlohmann::json::array();
    for (const auto& p : parts_) part_structs.push_back(p->structure());
    set_structure({{"kind", "shifted_union"},
                   {"left", universe_to_json(left_)},
                   {"right", universe_to_json(right_)},
                   {"width", width_},
                   {"parts", part_structs}});
  }

  int degree_of(const BitLabel& x) const override {
    return parts_[part_of(x)]->degree_of(x);
  }

  BitLabel neighbor(const BitLabel& x, int i) const override {
    std::size_t j = part_of(x);
    BitLabel r = parts_[j]->neighbor(x, i);
    std::uint64_t v = offsets_[j] + parts_[j]->right().index_of(r);
    return BitLabel(v, width_);
  }

 private:
  std::size_t part_of(const BitLabel& x) const {
    for (std::size_t j = 0; j < parts_.size(); ++j)
      if (parts_[j]->left().contains(x)) return j;
    throw std::out_of_range("left label not in graph");
  }

  std::vector<BipartiteGraph> parts_;
  std::vector<std::uint64_t> offsets_;
  int width_ = 1;
};

class PadGraph final : public GraphImpl {
 public:
  PadGraph(BipartiteGraph g, int target_len)
      : GraphImpl(g->left(), pad_universe(*g, target_len)),
        base_(std::move(g)),
        target_(target_len) {
    regular_degree_ = base_->regular_degree();
    set_structure({{"kind", "pad"},
                   {"target_len", target_},
                   {"left", universe_to_json(left_)},
                   {"right", universe_to_json(right_)},
                   {"base", base_->structure()}});
  }

  static BitLabel pad(const BitLabel& r, int target) {
    return BitLabel::cat(BitLabel::cat(r, BitLabel(1, 1)),
                         BitLabel::zeros(target - r.length() - 1));
  }

  int degree_of(const BitLabel& x) const override {
    return base_->degree_of(x);
  }

  BitLabel neighbor(const BitLabel& x, int i) const override {
    return pad(base_->neighbor(x, i), target_);
  }

 private:
  static UniverseSpec pad_universe(const GraphImpl& g, int target) {
    if (g.right().max_len() >= target)
      throw std::invalid_argument("pad target too small");
    std::vector<BitLabel> labels;
    for (std::uint64_t i = 0; i < g.right().cardinality(); ++i)
      labels.push_back(pad(g.right().at(i), target));
    return UniverseSpec::explicit_set(std::move(labels));
  }

  BipartiteGraph base_;
  int target_;
};

class ReplicateGraph final : public GraphImpl {
 public:
  ReplicateGraph(BipartiteGraph g, int copies)
      : GraphImpl(g->left(), replicate_universe(*g, copies)),
        base_(std::move(g)),
        copies_(copies),
        tag_width_(copies == 1 ? 0 : ceil_log2(static_cast<std::uint64_t>(
                                          copies))) {
    if (base_->regular_degree() >= 0 &&
        base_->regular_degree() <=
            std::numeric_limits<int>::max() / copies_)
      regular_degree_ = base_->regular_degree() * copies_;
    set_structure({{"kind", "replicate"},
                   {"copies", copies_},
                   {"left", universe_to_json(left_)},
                   {"right", universe_to_json(right_)},
                   {"base", base_->structure()}});
  }

  int degree_of(const BitLabel& x) const override {
    return base_->degree_of(x) * copies_;
  }

  BitLabel neighbor(const BitLabel& x, int idx) const override {
    int d = base_->degree_of(x);
    if (idx < 0 || idx >= d * copies_)
      throw std::out_of_range("neighbor index");
    int j = idx / d;
    int i = idx % d;
    return BitLabel::cat(BitLabel(static_cast<std::uint64_t>(j), tag_width_),
                         base_->neighbor(x, i));
  }

 private:
  static UniverseSpec replicate_universe(const GraphImpl& g, int copies) {
    if (copies < 1) throw std::invalid_argument("copies must be positive");
    if (copies == 1) return g.right();
    int w = ceil_log2(static_cast<std::uint64_t>(copies));
    if (g.right().is_cube() &&
        copies == (1 << w))
      return UniverseSpec::cube(g.right().min_len() + w);
    std::vector<BitLabel> labels;
    for (int j = 0; j < copies; ++j)
      for (std::uint64_t i = 0; i < g.right().cardinality(); ++i)
        labels.push_back(BitLabel::cat(
            BitLabel(static_cast<std::uint64_t>(j), w), g.right().at(i)));
    return UniverseSpec::explicit_set(std::move(labels));
  }

  BipartiteGraph base_;
  int copies_;
  int tag_width_;
};

class MergeGraph final : public GraphImpl {
 public:
  MergeGraph(BipartiteGraph g, int prefix_len)
      : GraphImpl(g->left(), UniverseSpec::cube(prefix_len)),
        base_(std::move(g)),
        prefix_(prefix_len) {
    if (base_->right().min_len() < prefix_len)
      throw std::invalid_argument("prefix_merge: label shorter than prefix");
    regular_degree_ = base_->regular_degree();
    set_structure({{"kind", "prefix_merge"},
                   {"prefix_len", prefix_},
                   {"left", universe_to_json(left_)},
                   {"right", universe_to_json(right_)},
                   {"base", base_->structure()}});
  }

  int degree_of(const BitLabel& x) const override {
    return base_->degree_of(x);
  }

  BitLabel neighbor(const BitLabel& x, int i) const override {
    return base_->neighbor(x, i).prefix(prefix_);
  }

 private:
  BipartiteGraph base_;
  int prefix_;
};

class ProductGraph final : public GraphImpl {
 public:
  ProductGraph(BipartiteGraph g, BipartiteGraph f)
      : GraphImpl(g->left(), f->right()),
        first_(std::move(g)),
        second_(std::move(f)) {
    check_interface();
    second_regular_ = second_->regular_degree();
    if (first_->regular_degree() >= 0 && second_regular_ >= 0) {
      long long d = static_cast<long long>(first_->regular_degree()) *
                    second_regular_;
      if (d <= std::numeric_limits<int>::max())
        regular_degree_ = static_cast<int>(d);
    }
    set_structure({{"kind", "product"},
                   {"left", universe_to_json(left_)},
                   {"right", universe_to_json(right_)},
                   {"first", first_->structure()},
                   {"second", second_->structure()}});
  }

  int degree_of(const BitLabel& x) const override {
    int dg = first_->degree_of(x);
    if (second_regular_ >= 0) return dg * second_regular_;
    int total = 0;
    for (int i = 0; i < dg; ++i)
      total += second_->degree_of(first_->neighbor(x, i));
    return total;
  }

  BitLabel neighbor(const BitLabel& x, int idx) const override {
    if (idx < 0) throw std::out_of_range("neighbor index");
    if (second_regular_ >= 0) {
      BitLabel z = first_->neighbor(x, idx / second_regular_);
      return second_->neighbor(z, idx % second_regular_);
    }
    int dg = first_->degree_of(x);
    for (int i = 0; i < dg; ++i) {
      BitLabel z = first_->neighbor(x, i);
      int dz = second_->degree_of(z);
      if (idx < dz) return second_->neighbor(z, idx);
      idx -= dz;
    }
    throw std::out_of_range("neighbor index");
  }

 private:
  void check_interface() const {
    const UniverseSpec& mid = first_->right();
    const UniverseSpec& fl = second_->left();
    if (fl.is_range()) {
      if (mid.min_len() >= fl.min_len() && mid.max_len() <= fl.max_len())
        return;
      // A range universe contains every string of the covered lengths, so
      // out-of-span labels are genuine mismatches.
      throw std::invalid_argument("product interface mismatch");
    }
    for (const BitLabel& r : enumerate_universe(mid))
      if (!fl.contains(r))
        throw std::invalid_argument("product interface mismatch");
  }

  BipartiteGraph first_;
  BipartiteGraph second_;
  int second_regular_ = -1;
};

using uint128 = unsigned __int128;

std::string to_string128(uint128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace

BipartiteGraph shifted_union(std::vector<BipartiteGraph> parts) {
  return std::make_shared<UnionGraph>(std::move(parts));
}

BipartiteGraph pad_right_labels(BipartiteGraph g, int target_len) {
  return std::make_shared<PadGraph>(std::move(g), target_len);
}

BipartiteGraph replicate_right(BipartiteGraph g, int copies) {
  return std::make_shared<ReplicateGraph>(std::move(g), copies);
}

BipartiteGraph prefix_merge(BipartiteGraph g, int prefix_len) {
  if (prefix_len < 0) throw std::invalid_argument("negative prefix length");
  return std::make_shared<MergeGraph>(std::move(g), prefix_len);
}

BipartiteGraph product(BipartiteGraph g, BipartiteGraph f) {
  return std::make_shared<ProductGraph>(std::move(g), std::move(f));
}

ExpanderEnvelope expander_envelope(int n, int k, int lambda) {
  if (k > n || k < 1 || lambda < 1)
    throw std::invalid_argument("envelope requires 1 <= k <= n, lambda >= 1");
  if (k > 30) throw std::invalid_argument("envelope k out of audit range");
  ExpanderEnvelope e;
  e.n = n;
  e.k = k;
  e.lambda = lambda;
  auto nk = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(k);
  uint128 d = static_cast<uint128>(lambda) * nk * nk;
  if (d > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("envelope degree overflow");
  e.degree = static_cast<std::uint64_t>(d);
  e.K = std::uint64_t{1} << k;
  uint128 m = static_cast<uint128>(e.degree) * e.degree * e.K * e.K;
  if (m > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("envelope right-size overflow");
  e.right_bound = static_cast<std::uint64_t>(m);
  for (std::uint64_t kp = 1; kp <= e.K; kp *= 2)
    e.expansion_table.emplace_back(kp, (e.degree * kp + 1) / 2);
  return e;
}

CondenserEnvelope condenser_envelope(int k, int alpha,
                                     std::uint64_t base_degree) {
  if (k < 1 || alpha < 1 || base_degree < 1)
    throw std::invalid_argument("condenser envelope arguments");
  CondenserEnvelope c;
  c.k = k;
  c.alpha = alpha;
  c.left_len = 8 * k;
  c.right_len = k + 1;
  c.base_degree = base_degree;
  std::uint64_t cube = 512ull * k * k * k;  // (8k)^3
  std::uint64_t denom = static_cast<std::uint64_t>(alpha) * base_degree;
  c.copies = 2 * ((cube + denom - 1) / denom);
  c.copies = std::max<std::uint64_t>(c.copies, 2);
  return c;
}

UnionSizeAudit union_size_audit(int k, int lambda) {
  if (k < 1 || k > 12 || lambda < 1)
    throw std::invalid_argument("size audit supports 1 <= k <= 12");
  UnionSizeAudit a;
  a.k = k;
  a.lambda = lambda;
  uint128 l2 = static_cast<uint128>(lambda) * lambda;
  uint128 sum = 0;
  std::uint64_t top = std::uint64_t{1} << k;
  for (std::uint64_t n = static_cast<std::uint64_t>(k); n <= top; ++n) {
    uint128 nk = static_cast<uint128>(n) * static_cast<std::uint64_t>(k);
    sum += l2 * nk * nk * nk * nk * (static_cast<uint128>(1) << (2 * k));
  }
  uint128 k4 = static_cast<uint128>(k) * k * k * k;
  uint128 bound = l2 * k4 * (static_cast<uint128>(1) << (7 * k));
  uint128 k8 = static_cast<uint128>(1) << (8 * k);
  a.sum = to_string128(sum);
  a.bound = to_string128(bound);
  a.k8 = to_string128(k8);
  a.sum_le_bound = sum <= bound;
  a.bound_lt_k8 = bound < k8;
  return a;
}

nlohmann::json UnionSizeAudit::to_json() const {
  return {{"k", k},
          {"lambda", lambda},
          {"sum", sum},
          {"bound", bound},
          {"k8", k8},
          {"sum_le_bound", sum_le_bound},
          {"bound_lt_k8", bound_lt_k8}};
}

int smallest_k_with_strict_size_bound(int lambda) {
  auto holds = [l2 = static_cast<double>(lambda) * lambda](int k) {
    return std::log2(l2) + 4 * std::log2(static_cast<double>(k)) <
           static_cast<double>(k);
  };
  // lhs grows like log k while rhs is linear, so once the bound holds at two
  // consecutive k >= 16 it holds for all larger k.
  for (int k = 16; k < 256; ++k)
    if (holds(k) && holds(k + 1)) return k;
  return -1;
}

double list_size_envelope(int n, int lambda, int alpha) {
  if (n < 1) throw std::invalid_argument("envelope length must be positive");
  double total = 1.0;
  for (int j = 0; (std::uint64_t{1} << j) < static_cast<std::uint64_t>(n); ++j)
    total += std::pow(2.0, j);
  int k_lo = ceil_log2(static_cast<std::uint64_t>(n));
  for (int k = std::max(1, k_lo); k <= n; ++k) {
    double block_deg = static_cast<double>(lambda) *
                       std::pow(static_cast<double>(n) * k, 2.0);
    double condenser_deg = 2.0 * 512.0 * std::pow(static_cast<double>(k), 3.0) /
                           static_cast<double>(alpha);
    total += block_deg * condenser_deg;
  }
  return total;
}

double envelope_loglog_slope(int n_lo, int n_hi, int lambda, int alpha) {
  if (n_lo < 2 || n_hi <= n_lo)
    throw std::invalid_argument("slope range must satisfy 2 <= lo < hi");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    double x = std::log(static_cast<double>(n));
    double y = std::log(list_size_envelope(n, lambda, alpha));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  double mean_x = sx / count;
  double mean_y = sy / count;
  return (sxy - count * mean_x * mean_y) / (sxx - count * mean_x * mean_x);
}

}  // namespace shortlist
