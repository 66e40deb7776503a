#include "shortlist/pipeline.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace shortlist {
namespace {

CheckBudget derived_budget(const PipelineConfig& cfg, std::uint64_t seed,
                           const char* tag) {
  CheckBudget b = cfg.check;
  b.seed = derive_seed(seed, tag);
  return b;
}

int block_right_len(const PipelineConfig& cfg) {
  return cfg.block_right_len > 0 ? cfg.block_right_len : cfg.k + 1;
}

int block_degree(const PipelineConfig& cfg) {
  return cfg.block_degree > 0 ? cfg.block_degree : (1 << cfg.k);
}

int condenser_right_len(const PipelineConfig& cfg) {
  return cfg.condenser_right_len > 0 ? cfg.condenser_right_len : cfg.k;
}

int condenser_degree(const PipelineConfig& cfg) {
  if (cfg.condenser_degree > 0) return cfg.condenser_degree;
  return std::max(1, 3 * (1 << (cfg.k - 2)));
}

int condenser_copies(const PipelineConfig& cfg) {
  return cfg.condenser_copies > 0 ? cfg.condenser_copies : 4;
}

void require_pipeline_k(const PipelineConfig& cfg) {
  if (cfg.k < 2 || cfg.k > 16)
    throw std::invalid_argument("pipeline requires 2 <= k <= 16");
}

struct CertifiedRandomDisperser {
  BipartiteGraph graph;
  DispersionCertificate certificate;
  int attempts = 0;
};

CertifiedRandomDisperser certified_random_disperser(
    const UniverseSpec& left, const UniverseSpec& right, int degree,
    int subset_size, int delta_num, int delta_den, std::uint64_t seed,
    int max_attempts, const CheckBudget& budget) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    RandomGraphSeed srg{derive_seed(seed, "sample-" + std::to_string(attempt)),
                        degree};
    BipartiteGraph g = random_regular_graph(left, right, srg);
    DispersionCertificate cert =
        check_disperser(g, subset_size, delta_num, delta_den, budget);
    if (cert.outcome.pass) {
      CertifiedRandomDisperser out;
      out.graph = std::move(g);
      out.certificate = std::move(cert);
      out.attempts = attempt;
      return out;
    }
  }
  throw std::runtime_error("disperser certification failed after " +
                           std::to_string(max_attempts) + " attempts");
}

}  // namespace

int default_cap(int k) {
  if (k >= 5) return k + 3;
  return std::min(1 << k, k + 3);
}

int resolved_cap(const PipelineConfig& cfg) {
  if (!cfg.cap) return default_cap(cfg.k);
  long long hi = cfg.k >= 62 ? std::numeric_limits<long long>::max()
                             : (1LL << cfg.k);
  if (*cfg.cap < cfg.k || *cfg.cap > hi)
    throw std::invalid_argument("cap must satisfy k <= cap <= 2^k");
  return *cfg.cap;
}

std::uint64_t expansion_subset_size(int k, int c) {
  if (k < 0 || k > 62) throw std::invalid_argument("k out of range");
  if (c < 1) throw std::invalid_argument("c must be positive");
  std::uint64_t K = std::uint64_t{1} << k;
  std::uint64_t cc = static_cast<std::uint64_t>(c) * c;
  return std::max<std::uint64_t>(1, K / cc);
}

CertifiedRandomGraph certified_random_expander(
    const UniverseSpec& left, const UniverseSpec& right, int degree,
    int subset_size, std::uint64_t required, std::uint64_t seed,
    int max_attempts, const CheckBudget& budget) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    RandomGraphSeed srg{derive_seed(seed, "sample-" + std::to_string(attempt)),
                        degree};
    BipartiteGraph g = random_regular_graph(left, right, srg);
    ExpansionCertificate cert = check_expander(g, subset_size, required, budget);
    if (cert.outcome.pass) {
      CertifiedRandomGraph out;
      out.graph = std::move(g);
      out.certificate = std::move(cert);
      out.attempts = attempt;
      return out;
    }
  }
  throw std::runtime_error("expander certification failed after " +
                           std::to_string(max_attempts) + " attempts");
}

BuildResult build_block_union(const PipelineConfig& cfg) {
  require_pipeline_k(cfg);
  const int cap = resolved_cap(cfg);
  const int K = 1 << cfg.k;
  const int degree = block_degree(cfg);
  const int rlen = block_right_len(cfg);
  if (degree > (1 << rlen))
    throw std::invalid_argument("block degree exceeds block right universe");
  const auto subset = expansion_subset_size(cfg.k, cfg.c);

  std::vector<BipartiteGraph> blocks;
  nlohmann::json block_manifests = nlohmann::json::array();
  for (int n = cfg.k; n <= cap; ++n) {
    std::uint64_t bseed =
        derive_seed(cfg.seed, "block-k" + std::to_string(cfg.k) + "-n" +
                                  std::to_string(n));
    CertifiedRandomGraph blk = certified_random_expander(
        UniverseSpec::cube(n), UniverseSpec::cube(rlen), degree,
        static_cast<int>(subset), static_cast<std::uint64_t>(K), bseed,
        cfg.max_attempts, derived_budget(cfg, bseed, "cert"));
    block_manifests.push_back({{"n", n},
                               {"seed", bseed},
                               {"attempt", blk.attempts},
                               {"fingerprint",
                                fingerprint_hex(graph_fingerprint(blk.graph))},
                               {"certificate", blk.certificate.to_json()}});
    blocks.push_back(std::move(blk.graph));
  }

  BipartiteGraph u = shifted_union(blocks);
  BuildResult out;
  out.manifest = {{"kind", "block_union"},
                  {"k", cfg.k},
                  {"c", cfg.c},
                  {"cap", cap},
                  {"degree", degree},
                  {"block_right_len", rlen},
                  {"seed", cfg.seed},
                  {"blocks", std::move(block_manifests)},
                  {"size_audit", union_size_audit(cfg.k, cfg.lambda).to_json()},
                  {"fingerprint", fingerprint_hex(graph_fingerprint(u))}};
  out.graph = std::move(u);
  return out;
}

BuildResult build_condenser(const PipelineConfig& cfg, int left_len) {
  require_pipeline_k(cfg);
  const int K = 1 << cfg.k;
  const int rlen = condenser_right_len(cfg);
  const int degree = condenser_degree(cfg);
  const int copies = condenser_copies(cfg);
  if (degree > (1 << rlen))
    throw std::invalid_argument("condenser degree exceeds base right universe");

  std::uint64_t cseed =
      derive_seed(cfg.seed, "condenser-k" + std::to_string(cfg.k));
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    std::uint64_t aseed = derive_seed(cseed, std::to_string(attempt));
    CertifiedRandomDisperser base = certified_random_disperser(
        UniverseSpec::cube(left_len), UniverseSpec::cube(rlen), degree, K, 1,
        2, aseed, cfg.max_attempts, derived_budget(cfg, aseed, "base-cert"));
    BipartiteGraph merged =
        prefix_merge(replicate_right(base.graph, copies), cfg.k + 1);
    ExpansionCertificate final_cert = check_expander(
        merged, K, static_cast<std::uint64_t>(K),
        derived_budget(cfg, aseed, "final-cert"));
    if (!final_cert.outcome.pass) continue;
    BuildResult out;
    out.manifest = {
        {"kind", "condenser"},
        {"k", cfg.k},
        {"left_len", left_len},
        {"base_right_len", rlen},
        {"base_degree", degree},
        {"copies", copies},
        {"seed", cseed},
        {"attempt", attempt},
        {"base_fingerprint", fingerprint_hex(graph_fingerprint(base.graph))},
        {"base_certificate", base.certificate.to_json()},
        {"certificate", final_cert.to_json()},
        {"fingerprint", fingerprint_hex(graph_fingerprint(merged))}};
    out.graph = std::move(merged);
    return out;
  }
  throw std::runtime_error("condenser certification failed after " +
                           std::to_string(cfg.max_attempts) + " attempts");
}

BuildResult build_matching_graph(const PipelineConfig& cfg) {
  require_pipeline_k(cfg);
  const int K = 1 << cfg.k;
  const auto subset = expansion_subset_size(cfg.k, cfg.c);

  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    PipelineConfig sub = cfg;
    sub.seed = derive_seed(cfg.seed, "k" + std::to_string(cfg.k) +
                                         "-attempt-" + std::to_string(attempt));
    BuildResult uni = build_block_union(sub);
    const int len_r = uni.graph->right().max_len() + 1;
    BipartiteGraph padded = pad_right_labels(uni.graph, len_r);
    BuildResult cond = build_condenser(sub, len_r);
    BipartiteGraph h = product(padded, cond.graph);

    ExpansionCertificate cert = check_expander(
        h, static_cast<int>(subset), static_cast<std::uint64_t>(K),
        derived_budget(cfg, sub.seed, "matching-cert"));
    CheckBudget degree_budget = derived_budget(cfg, sub.seed, "degree-audit");
    degree_budget.mode = CheckMode::Exhaustive;
    ExpansionCertificate degree_audit =
        check_expander(h, 1, static_cast<std::uint64_t>(K), degree_budget);
    if (!cert.outcome.pass || !degree_audit.outcome.pass) continue;

    BuildResult out;
    out.manifest = {{"kind", "matching_graph"},
                    {"k", cfg.k},
                    {"c", cfg.c},
                    {"cap", resolved_cap(cfg)},
                    {"lambda", cfg.lambda},
                    {"alpha", cfg.alpha},
                    {"seed", cfg.seed},
                    {"attempt", attempt},
                    {"pad_len", len_r},
                    {"session_bound", subset},
                    {"block_union", std::move(uni.manifest)},
                    {"condenser", std::move(cond.manifest)},
                    {"certificate", cert.to_json()},
                    {"min_degree_certificate", degree_audit.to_json()},
                    {"fingerprint", fingerprint_hex(graph_fingerprint(h))}};
    out.graph = std::move(h);
    return out;
  }
  throw std::runtime_error("matching graph certification failed after " +
                           std::to_string(cfg.max_attempts) + " attempts");
}

GraphStack::GraphStack(StackConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.k_max < 0 || cfg_.k_max > 32)
    throw std::invalid_argument("stack k_max out of range");
  for (int k = 0; k <= cfg_.k_max; ++k) {
    if (is_pipeline(k)) {
      PipelineConfig p = cfg_.pipeline;
      p.k = k;
      p.cap.reset();
      graphs_.emplace(k, build_matching_graph(p));
      continue;
    }
    UniverseSpec left = UniverseSpec::range(k, cap(k));
    UniverseSpec right = UniverseSpec::cube(k + 1);
    BuildResult fb;
    fb.graph = complete_bipartite(left, right);
    fb.manifest = {{"kind", "complete_fallback"},
                   {"k", k},
                   {"cap", cap(k)},
                   {"left", universe_to_json(left)},
                   {"right", universe_to_json(right)},
                   {"fingerprint",
                    fingerprint_hex(graph_fingerprint(fb.graph))}};
    graphs_.emplace(k, std::move(fb));
  }
}

int GraphStack::cap(int k) const {
  if (k < 0 || k > cfg_.k_max) throw std::out_of_range("stack: k");
  return default_cap(k);
}

bool GraphStack::is_pipeline(int k) const {
  return !cfg_.fallback_only && k >= cfg_.pipeline_min_k &&
         k <= cfg_.pipeline_max_k;
}

const BipartiteGraph& GraphStack::graph(int k) const {
  auto it = graphs_.find(k);
  if (it == graphs_.end()) throw std::out_of_range("stack: k");
  return it->second.graph;
}

const nlohmann::json& GraphStack::manifest(int k) const {
  auto it = graphs_.find(k);
  if (it == graphs_.end()) throw std::out_of_range("stack: k");
  return it->second.manifest;
}

std::uint64_t GraphStack::session_bound(int k) const {
  return expansion_subset_size(k, cfg_.pipeline.c);
}

}  // namespace shortlist
