#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "json.hpp"
#include "shortlist/graph.hpp"

namespace shortlist {

enum class RequestOutcome { Matched, Discarded, Duplicate };

struct RequestRecord {
  BitLabel x;
  RequestOutcome outcome;
  std::optional<BitLabel> right;  // set when matched
};

// Greedy online matching with discards. Each request is decided before the
// next is seen: x is matched to its first unoccupied neighbor in oracle
// index order, or discarded when all neighbors are occupied. Occupied right
// nodes never free up, so re-requesting any already-seen label (matched or
// discarded) is ignored idempotently.
class MatchSession {
 public:
  explicit MatchSession(BipartiteGraph g);

  RequestOutcome request(const BitLabel& x);

  std::optional<BitLabel> assignment(const BitLabel& x) const;
  std::optional<BitLabel> occupant(const BitLabel& r) const;

  const std::vector<RequestRecord>& log() const { return log_; }
  std::uint64_t requests_seen() const { return requests_seen_; }
  std::size_t matched_count() const { return matched_.size(); }
  const std::vector<BitLabel>& discarded() const { return discarded_; }

 private:
  BipartiteGraph graph_;
  std::map<BitLabel, BitLabel> matched_;   // left -> right
  std::map<BitLabel, BitLabel> occupied_;  // right -> left
  std::set<BitLabel> requested_;
  std::vector<BitLabel> discarded_;
  std::vector<RequestRecord> log_;
  std::uint64_t requests_seen_ = 0;
};

struct DiscardReport {
  std::uint64_t streams = 0;
  std::uint64_t max_discards = 0;
  std::uint64_t bound = 0;
  bool pass = false;
  std::optional<std::uint64_t> violating_stream;
  nlohmann::json to_json() const;
};

// Runs each stream through a fresh session over g and checks that every
// stream yields fewer than `bound` discards. Streams must carry at most
// `max_distinct` distinct labels (the expander subset size the bound is
// certified for).
DiscardReport discard_bound_check(
    const BipartiteGraph& g, std::uint64_t bound, std::uint64_t max_distinct,
    const std::vector<std::vector<BitLabel>>& streams);

// `count` streams of `len` distinct left labels each, drawn uniformly by a
// seeded deterministic generator.
std::vector<std::vector<BitLabel>> generate_streams(const BipartiteGraph& g,
                                                    std::uint64_t count,
                                                    int len,
                                                    std::uint64_t seed);

}  // namespace shortlist
