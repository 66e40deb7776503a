#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "shortlist/graph.hpp"

namespace shortlist {

// Disjoint union of left universes; right labels of part j are relabeled to
// fixed-width integers offset_j + index, so the parts' right sets are
// pairwise disjoint.
BipartiteGraph shifted_union(std::vector<BipartiteGraph> parts);

// Right label r becomes r . 1 . 0^(target_len - |r| - 1); injective, left
// side and adjacency unchanged.
BipartiteGraph pad_right_labels(BipartiteGraph g, int target_len);

// `copies` tagged copies of the right universe; every left node connects to
// its original neighbors in each copy. neighbor(x, j*D + i) = tag(j) .
// neighbor_g(x, i).
BipartiteGraph replicate_right(BipartiteGraph g, int copies);

// Right nodes sharing a length-prefix_len label prefix are identified; the
// right universe becomes {0,1}^prefix_len. Duplicate neighbors after the
// merge stay in the row; set computations deduplicate.
BipartiteGraph prefix_merge(BipartiteGraph g, int prefix_len);

// Composition through middle nodes: the row of x is the concatenation over
// z in row_g(x) of row_f(z). Requires right(g) contained in left(f).
BipartiteGraph product(BipartiteGraph g, BipartiteGraph f);

// Parameter envelope of one left-length-n expander block feeding the union:
// degree lambda*(n*k)^2, right size at most degree^2 * K^2, and the
// guaranteed expansion table (K', ceil(degree*K'/2)) for K' = 1,2,4,...,K.
struct ExpanderEnvelope {
  int n = 0;
  int k = 0;
  int lambda = 1;
  std::uint64_t degree = 0;
  std::uint64_t right_bound = 0;
  std::uint64_t K = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> expansion_table;
};
ExpanderEnvelope expander_envelope(int n, int k, int lambda);

// Envelope of the condenser built from a base disperser of the given degree:
// left length 8k, right length k+1, and the replication count
// 2 * ceil((8k)^3 / (alpha * degree)).
struct CondenserEnvelope {
  int k = 0;
  int alpha = 1;
  int left_len = 0;
  int right_len = 0;
  std::uint64_t base_degree = 0;
  std::uint64_t copies = 0;
};
CondenserEnvelope condenser_envelope(int k, int alpha,
                                     std::uint64_t base_degree);

// Exact audit of the union's envelope right-size sum
// sum_{n=k}^{2^k} lambda^2 (nk)^4 K^2 against the bound lambda^2 k^4 K^7.
// The strict comparison with K^8 holds only for large k; both verdicts are
// reported. Values are decimal strings (they overflow 64 bits quickly).
struct UnionSizeAudit {
  int k = 0;
  int lambda = 1;
  std::string sum;
  std::string bound;
  std::string k8;
  bool sum_le_bound = false;
  bool bound_lt_k8 = false;
  nlohmann::json to_json() const;
};
UnionSizeAudit union_size_audit(int k, int lambda);

// Smallest k at which lambda^2 k^4 K^7 < K^8, i.e. lambda^2 k^4 < 2^k.
int smallest_k_with_strict_size_bound(int lambda);

// Envelope bound on the generated list size for a string of length n:
// 1 + #{p : 2^|p| < n} + sum over k in [ceil(log2 n), n] of
// lambda (nk)^2 * (2 * (8k)^3 / alpha), evaluated in floating point.
double list_size_envelope(int n, int lambda, int alpha);

// Least-squares slope of log(bound) against log(n) over n in [n_lo, n_hi].
double envelope_loglog_slope(int n_lo, int n_hi, int lambda, int alpha);

}  // namespace shortlist
