#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "shortlist/combinators.hpp"
#include "shortlist/graph.hpp"
#include "shortlist/verify.hpp"

namespace shortlist {

// Desk-scale pipeline configuration. The provider knobs select the certified
// random stand-ins for the explicit base constructions; zeros mean
// "derive the default for this k".
struct PipelineConfig {
  int k = 2;
  int c = 2;                    // expansion target is (K/c^2, K), K = 2^k
  std::optional<int> cap;       // left length cap, default min(2^k, k+3)
  int lambda = 1;               // envelope bookkeeping only
  int alpha = 1;                // envelope bookkeeping only
  std::uint64_t seed = 0;
  int max_attempts = 16;
  CheckBudget check;

  int block_degree = 0;         // default 2^k
  int block_right_len = 0;      // default k+1
  int condenser_degree = 0;     // default max(1, 3 * 2^(k-2))
  int condenser_right_len = 0;  // default k
  int condenser_copies = 0;     // default 4
};

int default_cap(int k);
int resolved_cap(const PipelineConfig& cfg);
// Certified subset size max(1, K / c^2).
std::uint64_t expansion_subset_size(int k, int c);

struct BuildResult {
  BipartiteGraph graph;
  nlohmann::json manifest;
};

// Random left-regular graph re-sampled with derived seeds until it certifies
// as a (subset_size, required)-expander; throws after max_attempts failures.
struct CertifiedRandomGraph {
  BipartiteGraph graph;
  ExpansionCertificate certificate;
  int attempts = 0;  // index of the accepted attempt
};
CertifiedRandomGraph certified_random_expander(
    const UniverseSpec& left, const UniverseSpec& right, int degree,
    int subset_size, std::uint64_t required, std::uint64_t seed,
    int max_attempts, const CheckBudget& budget);

// Shifted union of one certified expander block per left length in
// [k, cap]; right labels padded to a common length. The manifest carries the
// per-block certificates and the envelope size audit.
BuildResult build_block_union(const PipelineConfig& cfg);

// Condenser: certified base disperser, replicated right side, prefix-merged
// to k+1 bits; certified as a (K, K)-expander.
BuildResult build_condenser(const PipelineConfig& cfg, int left_len);

// The per-k matching graph: product of the padded block union and the
// condenser, certified as a (K/c^2, K)-expander with a min-degree audit.
BuildResult build_matching_graph(const PipelineConfig& cfg);

// Per-k graph provider for the list generator: pipeline graphs inside
// [pipeline_min_k, pipeline_max_k], complete bipartite fallback outside
// (expansion is then trivial). Built eagerly; immutable afterwards.
struct StackConfig {
  int k_max = 4;
  int pipeline_min_k = 2;
  int pipeline_max_k = 4;
  bool fallback_only = false;
  PipelineConfig pipeline;
};

class GraphStack {
 public:
  explicit GraphStack(StackConfig cfg);

  int k_max() const { return cfg_.k_max; }
  int cap(int k) const;
  bool is_pipeline(int k) const;
  const BipartiteGraph& graph(int k) const;
  const nlohmann::json& manifest(int k) const;
  std::uint64_t session_bound(int k) const;  // K/c^2 for the discard audit

 private:
  StackConfig cfg_;
  std::map<int, BuildResult> graphs_;
};

}  // namespace shortlist
