#include "shortlist/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace shortlist {

namespace {

void require_nondegenerate(const UniverseSpec& left, const UniverseSpec& right,
                           int degree) {
  if (left.cardinality() == 0 || right.cardinality() == 0 || degree < 1)
    throw std::invalid_argument("degenerate graph");
}

class CompleteGraph final : public GraphImpl {
 public:
  CompleteGraph(UniverseSpec left, UniverseSpec right)
      : GraphImpl(std::move(left), std::move(right)) {
    if (right_.cardinality() > (std::uint64_t{1} << 31))
      throw std::invalid_argument("complete graph right side too large");
    degree_ = static_cast<int>(right_.cardinality());
    regular_degree_ = degree_;
    require_nondegenerate(left_, right_, degree_);
    set_structure({{"kind", "complete"},
                   {"left", universe_to_json(left_)},
                   {"right", universe_to_json(right_)},
                   {"degree", degree_}});
  }

  int degree_of(const BitLabel&) const override { return degree_; }

  BitLabel neighbor(const BitLabel& x, int i) const override {
    if (!left_.contains(x)) throw std::out_of_range("left label not in graph");
    if (i < 0 || i >= degree_) throw std::out_of_range("neighbor index");
    return right_.at(static_cast<std::uint64_t>(i));
  }

 private:
  int degree_;
};

class RandomGraph final : public GraphImpl {
 public:
  RandomGraph(UniverseSpec left, UniverseSpec right, RandomGraphSeed srg)
      : GraphImpl(std::move(left), std::move(right)), degree_(srg.degree) {
    regular_degree_ = degree_;
    require_nondegenerate(left_, right_, degree_);
    if (static_cast<std::uint64_t>(degree_) > right_.cardinality())
      throw std::invalid_argument(
          "random graph degree exceeds right universe");
    rows_.resize(left_.cardinality());
    std::uint64_t card = right_.cardinality();
    for (std::uint64_t li = 0; li < rows_.size(); ++li) {
      std::uint64_t state =
          srg.seed ^ fnv1a64(left_.at(li).to_string());
      rows_[li] = sample_without_replacement(state, card);
    }
    set_structure({{"kind", "random"},
                   {"left", universe_to_json(left_)},
                   {"right", universe_to_json(right_)},
                   {"degree", degree_},
                   {"seed", srg.seed},
                   {"generator", "splitmix64-v1"}});
  }

  int degree_of(const BitLabel&) const override { return degree_; }

  BitLabel neighbor(const BitLabel& x, int i) const override {
    std::uint64_t li = left_.index_of(x);
    if (i < 0 || i >= degree_) throw std::out_of_range("neighbor index");
    return right_.at(rows_[li][static_cast<std::size_t>(i)]);
  }

 private:
  std::vector<std::uint32_t> sample_without_replacement(
      std::uint64_t state, std::uint64_t card) const {
    std::vector<std::uint32_t> row;
    row.reserve(static_cast<std::size_t>(degree_));
    if (static_cast<std::uint64_t>(degree_) * 2 >= card) {
      // Dense case: partial Fisher-Yates over the full index range.
      std::vector<std::uint32_t> idx(card);
      for (std::uint64_t i = 0; i < card; ++i)
        idx[i] = static_cast<std::uint32_t>(i);
      for (int j = 0; j < degree_; ++j) {
        std::uint64_t r = j + splitmix64(state) % (card - j);
        std::swap(idx[j], idx[r]);
        row.push_back(idx[j]);
      }
    } else {
      std::unordered_set<std::uint32_t> seen;
      while (row.size() < static_cast<std::size_t>(degree_)) {
        auto v = static_cast<std::uint32_t>(splitmix64(state) % card);
        if (seen.insert(v).second) row.push_back(v);
      }
    }
    return row;
  }

  int degree_;
  std::vector<std::vector<std::uint32_t>> rows_;
};

class ExplicitGraph final : public GraphImpl {
 public:
  ExplicitGraph(std::vector<std::pair<BitLabel, std::vector<BitLabel>>> rows,
                std::optional<UniverseSpec> declared_right)
      : GraphImpl(make_left(rows), make_right(rows, declared_right)) {
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    rows_.reserve(rows.size());
    for (auto& [x, row] : rows) {
      if (row.empty()) throw std::invalid_argument("degenerate graph");
      for (const BitLabel& r : row)
        if (!right_.contains(r))
          throw std::invalid_argument("edge endpoint outside right universe");
      rows_.push_back(std::move(row));
    }
    bool uniform = true;
    for (const auto& row : rows_)
      if (row.size() != rows_.front().size()) uniform = false;
    if (uniform) regular_degree_ = static_cast<int>(rows_.front().size());
    set_structure({{"kind", "explicit"},
                   {"left", universe_to_json(left_)},
                   {"right", universe_to_json(right_)},
                   {"degree", max_degree()}});
  }

  int degree_of(const BitLabel& x) const override {
    return static_cast<int>(rows_[left_.index_of(x)].size());
  }

  BitLabel neighbor(const BitLabel& x, int i) const override {
    const auto& row = rows_[left_.index_of(x)];
    if (i < 0 || static_cast<std::size_t>(i) >= row.size())
      throw std::out_of_range("neighbor index");
    return row[static_cast<std::size_t>(i)];
  }

 private:
  static UniverseSpec make_left(
      const std::vector<std::pair<BitLabel, std::vector<BitLabel>>>& rows) {
    std::vector<BitLabel> lefts;
    lefts.reserve(rows.size());
    for (const auto& [x, row] : rows) lefts.push_back(x);
    return UniverseSpec::explicit_set(std::move(lefts));
  }

  static UniverseSpec make_right(
      const std::vector<std::pair<BitLabel, std::vector<BitLabel>>>& rows,
      const std::optional<UniverseSpec>& declared) {
    if (declared) return *declared;
    std::vector<BitLabel> rights;
    for (const auto& [x, row] : rows)
      rights.insert(rights.end(), row.begin(), row.end());
    std::sort(rights.begin(), rights.end());
    rights.erase(std::unique(rights.begin(), rights.end()), rights.end());
    return UniverseSpec::explicit_set(std::move(rights));
  }

  int max_degree() const {
    std::size_t d = 0;
    for (const auto& row : rows_) d = std::max(d, row.size());
    return static_cast<int>(d);
  }

  std::vector<std::vector<BitLabel>> rows_;
};

}  // namespace

BipartiteGraph complete_bipartite(const UniverseSpec& left,
                                  const UniverseSpec& right) {
  return std::make_shared<CompleteGraph>(left, right);
}

BipartiteGraph random_regular_graph(const UniverseSpec& left,
                                    const UniverseSpec& right,
                                    const RandomGraphSeed& srg) {
  return std::make_shared<RandomGraph>(left, right, srg);
}

BipartiteGraph explicit_graph(
    std::vector<std::pair<BitLabel, std::vector<BitLabel>>> rows,
    std::optional<UniverseSpec> declared_right) {
  return std::make_shared<ExplicitGraph>(std::move(rows),
                                         std::move(declared_right));
}

std::vector<BitLabel> enumerate_left(const BipartiteGraph& g) {
  std::vector<BitLabel> out;
  out.reserve(g->left().cardinality());
  for (std::uint64_t i = 0; i < g->left().cardinality(); ++i)
    out.push_back(g->left().at(i));
  return out;
}

std::vector<BitLabel> neighbor_row(const BipartiteGraph& g,
                                   const BitLabel& x) {
  std::vector<BitLabel> row;
  int d = g->degree_of(x);
  row.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) row.push_back(g->neighbor(x, i));
  return row;
}

std::vector<BitLabel> distinct_neighbors(const BipartiteGraph& g,
                                         const BitLabel& x) {
  std::vector<BitLabel> row = neighbor_row(g, x);
  std::sort(row.begin(), row.end());
  row.erase(std::unique(row.begin(), row.end()), row.end());
  return row;
}

void write_edge_dump(const BipartiteGraph& g, std::ostream& out) {
  for (std::uint64_t li = 0; li < g->left().cardinality(); ++li) {
    BitLabel x = g->left().at(li);
    int d = g->degree_of(x);
    for (int i = 0; i < d; ++i)
      out << x.to_string() << ' ' << g->neighbor(x, i).to_string() << '\n';
  }
}

BipartiteGraph load_edge_dump(std::istream& in,
                              std::optional<UniverseSpec> declared_right) {
  std::map<BitLabel, std::vector<BitLabel>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto sp = line.find(' ');
    if (sp == std::string::npos)
      throw std::invalid_argument("edge dump line " + std::to_string(lineno) +
                                  ": expected '<left> <right>'");
    BitLabel x = BitLabel::parse(std::string_view(line).substr(0, sp));
    BitLabel r = BitLabel::parse(std::string_view(line).substr(sp + 1));
    rows[x].push_back(r);
  }
  if (rows.empty()) throw std::invalid_argument("edge dump is empty");
  std::vector<std::pair<BitLabel, std::vector<BitLabel>>> rv;
  rv.reserve(rows.size());
  for (auto& [x, row] : rows) rv.emplace_back(x, std::move(row));
  return explicit_graph(std::move(rv), std::move(declared_right));
}

nlohmann::json universe_to_json(const UniverseSpec& u) {
  return {{"min_len", u.min_len()},
          {"max_len", u.max_len()},
          {"cardinality", u.cardinality()}};
}

std::uint64_t graph_fingerprint(const BipartiteGraph& g) {
  return fnv1a64(g->structure().dump());
}

std::string fingerprint_hex(std::uint64_t fp) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[fp & 0xf];
    fp >>= 4;
  }
  return s;
}

}  // namespace shortlist
