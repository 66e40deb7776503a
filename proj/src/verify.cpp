#include "shortlist/verify.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <stdexcept>

namespace shortlist {

namespace {

// Distinct-neighbor sets as bitmasks over right-universe indices.
struct RowMasks {
  explicit RowMasks(const BipartiteGraph& g) : graph(g) {
    n_left = g->left().cardinality();
    words = (g->right().cardinality() + 63) / 64;
    if (n_left * words > (std::uint64_t{1} << 26))
      throw std::runtime_error("verification mask table too large");
    bits.assign(n_left * words, 0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t li = 0; li < static_cast<std::int64_t>(n_left); ++li) {
      BitLabel x = g->left().at(static_cast<std::uint64_t>(li));
      int d = g->degree_of(x);
      std::uint64_t* row = &bits[static_cast<std::uint64_t>(li) * words];
      for (int i = 0; i < d; ++i) {
        std::uint64_t ri = g->right().index_of(g->neighbor(x, i));
        row[ri / 64] |= std::uint64_t{1} << (ri % 64);
      }
    }
  }

  const std::uint64_t* row(std::uint64_t li) const {
    return &bits[li * words];
  }

  std::uint64_t coverage(const std::uint32_t* idx, int count) const {
    std::uint64_t total = 0;
    for (std::uint64_t w = 0; w < words; ++w) {
      std::uint64_t acc = 0;
      for (int j = 0; j < count; ++j) acc |= row(idx[j])[w];
      total += static_cast<std::uint64_t>(std::popcount(acc));
    }
    return total;
  }

  std::uint64_t row_coverage(std::uint64_t li) const {
    std::uint64_t total = 0;
    for (std::uint64_t w = 0; w < words; ++w)
      total += static_cast<std::uint64_t>(std::popcount(row(li)[w]));
    return total;
  }

  BipartiteGraph graph;
  std::uint64_t n_left = 0;
  std::uint64_t words = 0;
  std::vector<std::uint64_t> bits;
};

std::vector<BitLabel> labels_of(const BipartiteGraph& g,
                                const std::vector<std::uint32_t>& idx) {
  std::vector<std::uint32_t> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  std::vector<BitLabel> out;
  out.reserve(sorted.size());
  for (std::uint32_t i : sorted) out.push_back(g->left().at(i));
  return out;
}

// Rank of a sorted index combination in lexicographic enumeration order.
std::uint64_t combination_rank(const std::vector<std::uint32_t>& c,
                               std::uint64_t n) {
  std::uint64_t rank = 0;
  std::uint32_t prev = 0;
  std::uint64_t s = c.size();
  for (std::uint64_t j = 0; j < s; ++j) {
    for (std::uint32_t v = prev; v < c[j]; ++v)
      rank += choose_clamped(n - 1 - v, s - 1 - j);
    prev = c[j] + 1;
  }
  return rank;
}

// Scans combinations with fixed first index i0 in lex order; stops at the
// first violation. Returns (checked, min coverage, violation subset).
struct BranchResult {
  std::uint64_t checked = 0;
  std::uint64_t min_cov = std::numeric_limits<std::uint64_t>::max();
  std::optional<std::vector<std::uint32_t>> violation;
};

BranchResult scan_branch(const RowMasks& m, std::uint32_t i0, int s,
                         std::uint64_t required) {
  BranchResult res;
  auto n = static_cast<std::uint32_t>(m.n_left);
  std::vector<std::uint32_t> c(static_cast<std::size_t>(s));
  c[0] = i0;
  for (int j = 1; j < s; ++j) c[j] = i0 + static_cast<std::uint32_t>(j);
  while (true) {
    std::uint64_t cov = m.coverage(c.data(), s);
    ++res.checked;
    res.min_cov = std::min(res.min_cov, cov);
    if (cov < required) {
      res.violation = c;
      return res;
    }
    // Advance positions 1..s-1 (position 0 is pinned to i0).
    int j = s - 1;
    while (j >= 1 && c[j] == n - static_cast<std::uint32_t>(s - j)) --j;
    if (j < 1) return res;
    ++c[j];
    for (int t = j + 1; t < s; ++t) c[t] = c[t - 1] + 1;
  }
}

CheckOutcome finish_exhaustive(const RowMasks& m, int s,
                               const std::vector<BranchResult>& branches,
                               std::uint64_t total) {
  CheckOutcome out;
  out.exhaustive = true;
  for (const auto& b : branches) {
    if (b.violation) {
      out.pass = false;
      out.witness = labels_of(m.graph, *b.violation);
      out.min_neighbors_seen = m.coverage(b.violation->data(), s);
      out.subsets_checked = combination_rank(*b.violation, m.n_left) + 1;
      return out;
    }
    out.min_neighbors_seen = std::min(out.min_neighbors_seen
                                          ? out.min_neighbors_seen
                                          : b.min_cov,
                                      b.min_cov);
  }
  out.pass = true;
  out.subsets_checked = total;
  return out;
}

std::vector<std::uint32_t> sample_distinct(std::uint64_t& state,
                                           std::uint32_t n, int k) {
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(k));
  if (static_cast<std::uint32_t>(k) * 2 >= n) {
    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
    for (int j = 0; j < k; ++j) {
      std::uint64_t r = j + splitmix64(state) % (n - static_cast<std::uint32_t>(j));
      std::swap(idx[static_cast<std::size_t>(j)], idx[r]);
      out.push_back(idx[static_cast<std::size_t>(j)]);
    }
  } else {
    while (out.size() < static_cast<std::size_t>(k)) {
      auto v = static_cast<std::uint32_t>(splitmix64(state) % n);
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  return out;
}

std::vector<std::uint32_t> greedy_from(const RowMasks& m, std::uint32_t start,
                                       int size,
                                       std::vector<std::uint64_t>& acc) {
  auto n = static_cast<std::uint32_t>(m.n_left);
  std::vector<std::uint32_t> subset = {start};
  std::vector<bool> in(n, false);
  in[start] = true;
  acc.assign(m.words, 0);
  for (std::uint64_t w = 0; w < m.words; ++w) acc[w] = m.row(start)[w];
  while (subset.size() < static_cast<std::size_t>(size)) {
    std::uint32_t best = n;
    std::uint64_t best_cov = std::numeric_limits<std::uint64_t>::max();
    for (std::uint32_t c = 0; c < n; ++c) {
      if (in[c]) continue;
      std::uint64_t cov = 0;
      for (std::uint64_t w = 0; w < m.words; ++w)
        cov += static_cast<std::uint64_t>(std::popcount(acc[w] | m.row(c)[w]));
      if (cov < best_cov) {
        best_cov = cov;
        best = c;
      }
    }
    in[best] = true;
    subset.push_back(best);
    for (std::uint64_t w = 0; w < m.words; ++w) acc[w] |= m.row(best)[w];
  }
  return subset;
}

std::uint32_t min_degree_start(const RowMasks& m) {
  std::uint32_t best = 0;
  std::uint64_t best_cov = std::numeric_limits<std::uint64_t>::max();
  for (std::uint32_t i = 0; i < m.n_left; ++i) {
    std::uint64_t cov = m.row_coverage(i);
    if (cov < best_cov) {
      best_cov = cov;
      best = i;
    }
  }
  return best;
}

CheckOutcome sampled_scan(const RowMasks& m, int s, std::uint64_t required,
                          const CheckBudget& budget) {
  CheckOutcome out;
  out.exhaustive = false;
  out.samples = budget.samples;
  out.adversarial_restarts = budget.adversarial_restarts;
  auto n = static_cast<std::uint32_t>(m.n_left);

  std::uint64_t violations = 0;
  std::int64_t first_violation = -1;
  std::uint64_t min_cov = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel
  {
    std::uint64_t local_viol = 0;
    std::int64_t local_first = -1;
    std::uint64_t local_min = std::numeric_limits<std::uint64_t>::max();
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(budget.samples);
         ++i) {
      std::uint64_t state =
          budget.seed ^ splitmix64_key(static_cast<std::uint64_t>(i));
      auto subset = sample_distinct(state, n, s);
      std::uint64_t cov = m.coverage(subset.data(), s);
      local_min = std::min(local_min, cov);
      if (cov < required) {
        ++local_viol;
        if (local_first < 0) local_first = i;
      }
    }
#pragma omp critical
    {
      violations += local_viol;
      min_cov = std::min(min_cov, local_min);
      if (local_first >= 0 &&
          (first_violation < 0 || local_first < first_violation))
        first_violation = local_first;
    }
  }

  // Adversarial probes: one deterministic greedy from the min-degree start,
  // then seeded random starts.
  std::uint64_t adv_min = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint32_t> adv_witness;
  std::vector<std::uint64_t> acc;
  {
    auto subset = greedy_from(m, min_degree_start(m), s, acc);
    adv_min = m.coverage(subset.data(), s);
    adv_witness = subset;
  }
  for (std::uint64_t r = 0; r < budget.adversarial_restarts; ++r) {
    std::uint64_t state = budget.seed ^ splitmix64_key(0x5eedad00u + r);
    auto start = static_cast<std::uint32_t>(splitmix64(state) % n);
    auto subset = greedy_from(m, start, s, acc);
    std::uint64_t cov = m.coverage(subset.data(), s);
    if (cov < adv_min) {
      adv_min = cov;
      adv_witness = subset;
    }
  }

  out.violations = violations + (adv_min < required ? 1 : 0);
  out.subsets_checked = budget.samples + budget.adversarial_restarts + 1;
  out.min_neighbors_seen = std::min(min_cov, adv_min);
  out.pass = violations == 0 && adv_min >= required;
  if (!out.pass) {
    if (first_violation >= 0) {
      std::uint64_t state = budget.seed ^
                            splitmix64_key(static_cast<std::uint64_t>(
                                first_violation));
      out.witness = labels_of(m.graph, sample_distinct(state, n, s));
    } else {
      out.witness = labels_of(m.graph, adv_witness);
    }
  }
  return out;
}

CheckOutcome run_check(const BipartiteGraph& g, int subset_size,
                       std::uint64_t required, const CheckBudget& budget) {
  if (subset_size < 1)
    throw std::invalid_argument("subset size must be positive");
  if (static_cast<std::uint64_t>(subset_size) > g->left().cardinality())
    throw std::invalid_argument("subset size exceeds left universe");
  RowMasks m(g);
  std::uint64_t total = choose_clamped(m.n_left,
                                       static_cast<std::uint64_t>(subset_size));
  bool exhaustive;
  switch (budget.mode) {
    case CheckMode::Exhaustive:
      exhaustive = true;
      break;
    case CheckMode::Sampled:
      exhaustive = false;
      break;
    default:
      exhaustive = total <= budget.exhaustive_limit;
  }
  if (!exhaustive) return sampled_scan(m, subset_size, required, budget);

  auto n = static_cast<std::uint32_t>(m.n_left);
  auto s = subset_size;
  std::uint32_t branch_count = n - static_cast<std::uint32_t>(s) + 1;
  std::vector<BranchResult> branches(branch_count);
  std::atomic<std::uint32_t> cut{branch_count};
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i0 = 0; i0 < static_cast<std::int64_t>(branch_count);
       ++i0) {
    if (static_cast<std::uint32_t>(i0) > cut.load(std::memory_order_relaxed))
      continue;
    branches[static_cast<std::size_t>(i0)] =
        scan_branch(m, static_cast<std::uint32_t>(i0), s, required);
    if (branches[static_cast<std::size_t>(i0)].violation) {
      std::uint32_t expect = cut.load(std::memory_order_relaxed);
      while (static_cast<std::uint32_t>(i0) < expect &&
             !cut.compare_exchange_weak(expect,
                                        static_cast<std::uint32_t>(i0))) {
      }
    }
  }
  return finish_exhaustive(m, s, branches, total);
}

}  // namespace

std::uint64_t choose_clamped(std::uint64_t n, std::uint64_t k,
                             std::uint64_t clamp) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    std::uint64_t factor = n - k + i;
    if (result > clamp / factor) return clamp;
    result = result * factor / i;
  }
  return std::min(result, clamp);
}

ExpansionCertificate check_expander(const BipartiteGraph& g, int subset_size,
                                    std::uint64_t required,
                                    const CheckBudget& budget) {
  ExpansionCertificate cert;
  cert.subset_size = subset_size;
  cert.required_neighbors = required;
  cert.seed = budget.seed;
  cert.outcome = run_check(g, subset_size, required, budget);
  cert.graph_fingerprint = graph_fingerprint(g);
  return cert;
}

DispersionCertificate check_disperser(const BipartiteGraph& g, int subset_size,
                                      std::uint64_t delta_num,
                                      std::uint64_t delta_den,
                                      const CheckBudget& budget) {
  if (delta_den == 0 || delta_num >= delta_den)
    throw std::invalid_argument("delta must be a rational in [0, 1)");
  DispersionCertificate cert;
  cert.subset_size = subset_size;
  cert.delta_num = delta_num;
  cert.delta_den = delta_den;
  std::uint64_t r = g->right().cardinality();
  cert.required_neighbors = ((delta_den - delta_num) * r + delta_den - 1) /
                            delta_den;
  cert.seed = budget.seed;
  cert.outcome = run_check(g, subset_size, cert.required_neighbors, budget);
  cert.graph_fingerprint = graph_fingerprint(g);
  return cert;
}

std::pair<std::vector<BitLabel>, std::uint64_t> min_neighbor_subset(
    const BipartiteGraph& g, int size) {
  if (size < 1) throw std::invalid_argument("subset size must be positive");
  if (static_cast<std::uint64_t>(size) > g->left().cardinality())
    throw std::invalid_argument("subset size exceeds left universe");
  RowMasks m(g);
  std::vector<std::uint64_t> acc;
  auto subset = greedy_from(m, min_degree_start(m), size, acc);
  std::uint64_t cov = m.coverage(subset.data(), size);
  return {labels_of(g, subset), cov};
}

std::uint64_t neighbor_union_size(const BipartiteGraph& g,
                                  const std::vector<BitLabel>& subset) {
  std::vector<BitLabel> all;
  for (const BitLabel& x : subset) {
    auto d = distinct_neighbors(g, x);
    all.insert(all.end(), d.begin(), d.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all.size();
}

CheckOutcome exhaustive_scan_serial(const BipartiteGraph& g, int subset_size,
                                    std::uint64_t required) {
  RowMasks m(g);
  auto n = static_cast<std::uint32_t>(m.n_left);
  auto s = subset_size;
  if (s < 1 || static_cast<std::uint32_t>(s) > n)
    throw std::invalid_argument("subset size exceeds left universe");
  CheckOutcome out;
  out.exhaustive = true;
  out.min_neighbors_seen = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint32_t> c(static_cast<std::size_t>(s));
  for (int j = 0; j < s; ++j) c[j] = static_cast<std::uint32_t>(j);
  while (true) {
    std::uint64_t cov = m.coverage(c.data(), s);
    ++out.subsets_checked;
    out.min_neighbors_seen = std::min(out.min_neighbors_seen, cov);
    if (cov < required) {
      out.pass = false;
      out.witness = labels_of(g, c);
      return out;
    }
    int j = s - 1;
    while (j >= 0 && c[j] == n - static_cast<std::uint32_t>(s - j)) --j;
    if (j < 0) break;
    ++c[j];
    for (int t = j + 1; t < s; ++t) c[t] = c[t - 1] + 1;
  }
  out.pass = true;
  return out;
}

CheckOutcome exhaustive_scan_parallel(const BipartiteGraph& g, int subset_size,
                                      std::uint64_t required) {
  CheckBudget b;
  b.mode = CheckMode::Exhaustive;
  return run_check(g, subset_size, required, b);
}

namespace {

nlohmann::json outcome_to_json(const CheckOutcome& o) {
  nlohmann::json witness = nlohmann::json::array();
  for (const BitLabel& l : o.witness) witness.push_back(l.to_string());
  return {{"mode", o.exhaustive ? "exhaustive" : "adversarial+sampled"},
          {"pass", o.pass},
          {"subsets_checked", o.subsets_checked},
          {"samples", o.samples},
          {"adversarial_restarts", o.adversarial_restarts},
          {"violations", o.violations},
          {"min_neighbors_seen", o.min_neighbors_seen},
          {"witness", witness}};
}

}  // namespace

nlohmann::json ExpansionCertificate::to_json() const {
  nlohmann::json j = outcome_to_json(outcome);
  j["type"] = "expansion";
  j["subset_size"] = subset_size;
  j["required_neighbors"] = required_neighbors;
  j["seed"] = seed;
  j["graph_fingerprint"] = fingerprint_hex(graph_fingerprint);
  return j;
}

nlohmann::json DispersionCertificate::to_json() const {
  nlohmann::json j = outcome_to_json(outcome);
  j["type"] = "dispersion";
  j["subset_size"] = subset_size;
  j["delta"] = {{"num", delta_num}, {"den", delta_den}};
  j["required_neighbors"] = required_neighbors;
  j["seed"] = seed;
  j["graph_fingerprint"] = fingerprint_hex(graph_fingerprint);
  return j;
}

}  // namespace shortlist
