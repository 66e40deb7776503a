#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "shortlist/graph.hpp"

namespace shortlist {

enum class CheckMode {
  Auto,        // exhaustive when C(|L|, size) fits the budget, else sampled
  Exhaustive,  // definitive pass/fail
  Sampled,     // uniform samples plus adversarial greedy restarts
};

struct CheckBudget {
  std::uint64_t exhaustive_limit = 10'000'000;
  std::uint64_t samples = 100'000;
  std::uint64_t adversarial_restarts = 1'000;
  std::uint64_t seed = 0;
  CheckMode mode = CheckMode::Auto;
};

struct CheckOutcome {
  bool pass = false;
  bool exhaustive = false;  // pass is definitive only when true
  std::uint64_t subsets_checked = 0;
  std::uint64_t samples = 0;
  std::uint64_t adversarial_restarts = 0;
  std::uint64_t violations = 0;
  std::uint64_t min_neighbors_seen = 0;
  // Violating subset on fail; on an exhaustive fail it is the
  // lexicographically first violating subset in left-index order.
  std::vector<BitLabel> witness;
};

struct ExpansionCertificate {
  int subset_size = 0;
  std::uint64_t required_neighbors = 0;
  std::uint64_t seed = 0;
  CheckOutcome outcome;
  std::uint64_t graph_fingerprint = 0;
  nlohmann::json to_json() const;
};

struct DispersionCertificate {
  int subset_size = 0;
  std::uint64_t delta_num = 1;
  std::uint64_t delta_den = 2;
  std::uint64_t required_neighbors = 0;  // ceil((1 - delta) * |R|)
  std::uint64_t seed = 0;
  CheckOutcome outcome;
  std::uint64_t graph_fingerprint = 0;
  nlohmann::json to_json() const;
};

// Every subset of left labels of the given size must have at least
// `required` distinct right neighbors.
ExpansionCertificate check_expander(const BipartiteGraph& g, int subset_size,
                                    std::uint64_t required,
                                    const CheckBudget& budget = {});

// Every subset of the given size must touch at least (1 - delta)|R| right
// nodes, delta = delta_num / delta_den.
DispersionCertificate check_disperser(const BipartiteGraph& g, int subset_size,
                                      std::uint64_t delta_num,
                                      std::uint64_t delta_den,
                                      const CheckBudget& budget = {});

// Deterministic greedy search for a subset with a small neighbor union:
// start at the left node of minimal distinct degree, then repeatedly add
// the node contributing the fewest new neighbors (ties by label order).
std::pair<std::vector<BitLabel>, std::uint64_t> min_neighbor_subset(
    const BipartiteGraph& g, int size);

// Distinct neighbor count of a concrete subset; re-verifies witnesses.
std::uint64_t neighbor_union_size(const BipartiteGraph& g,
                                  const std::vector<BitLabel>& subset);

// Single-threaded reference implementation of the exhaustive scan; the
// parallel kernel must agree with it exactly (tested).
CheckOutcome exhaustive_scan_serial(const BipartiteGraph& g, int subset_size,
                                    std::uint64_t required);
CheckOutcome exhaustive_scan_parallel(const BipartiteGraph& g, int subset_size,
                                      std::uint64_t required);

// C(n, k) clamped to avoid overflow.
std::uint64_t choose_clamped(std::uint64_t n, std::uint64_t k,
                             std::uint64_t clamp = ~std::uint64_t{0});

}  // namespace shortlist
