#include "shortlist/matching.hpp"

#include <stdexcept>

namespace shortlist {

MatchSession::MatchSession(BipartiteGraph g) : graph_(std::move(g)) {}

RequestOutcome MatchSession::request(const BitLabel& x) {
  if (!graph_->left().contains(x))
    throw std::invalid_argument("request outside left universe: " +
                                x.to_string());
  ++requests_seen_;
  if (!requested_.insert(x).second) {
    log_.push_back({x, RequestOutcome::Duplicate, std::nullopt});
    return RequestOutcome::Duplicate;
  }
  int d = graph_->degree_of(x);
  for (int i = 0; i < d; ++i) {
    BitLabel r = graph_->neighbor(x, i);
    if (occupied_.find(r) == occupied_.end()) {
      occupied_.emplace(r, x);
      matched_.emplace(x, r);
      log_.push_back({x, RequestOutcome::Matched, r});
      return RequestOutcome::Matched;
    }
  }
  discarded_.push_back(x);
  log_.push_back({x, RequestOutcome::Discarded, std::nullopt});
  return RequestOutcome::Discarded;
}

std::optional<BitLabel> MatchSession::assignment(const BitLabel& x) const {
  auto it = matched_.find(x);
  if (it == matched_.end()) return std::nullopt;
  return it->second;
}

std::optional<BitLabel> MatchSession::occupant(const BitLabel& r) const {
  auto it = occupied_.find(r);
  if (it == occupied_.end()) return std::nullopt;
  return it->second;
}

nlohmann::json DiscardReport::to_json() const {
  nlohmann::json j = {{"streams", streams},
                      {"max_discards", max_discards},
                      {"bound", bound},
                      {"pass", pass}};
  if (violating_stream) j["violating_stream"] = *violating_stream;
  return j;
}

DiscardReport discard_bound_check(
    const BipartiteGraph& g, std::uint64_t bound, std::uint64_t max_distinct,
    const std::vector<std::vector<BitLabel>>& streams) {
  DiscardReport report;
  report.streams = streams.size();
  report.bound = bound;
  report.pass = true;
  for (std::uint64_t si = 0; si < streams.size(); ++si) {
    std::set<BitLabel> distinct(streams[si].begin(), streams[si].end());
    if (distinct.size() > max_distinct)
      throw std::invalid_argument("stream " + std::to_string(si) +
                                  " exceeds the certified request budget");
    MatchSession session(g);
    for (const BitLabel& x : streams[si]) session.request(x);
    auto d = static_cast<std::uint64_t>(session.discarded().size());
    if (d > report.max_discards) report.max_discards = d;
    if (d >= bound && report.pass) {
      report.pass = false;
      report.violating_stream = si;
    }
  }
  return report;
}

std::vector<std::vector<BitLabel>> generate_streams(const BipartiteGraph& g,
                                                    std::uint64_t count,
                                                    int len,
                                                    std::uint64_t seed) {
  std::uint64_t card = g->left().cardinality();
  if (static_cast<std::uint64_t>(len) > card)
    throw std::invalid_argument("stream length exceeds left universe");
  std::vector<std::vector<BitLabel>> streams;
  streams.reserve(count);
  for (std::uint64_t si = 0; si < count; ++si) {
    std::uint64_t state = seed ^ splitmix64_key(si);
    std::vector<BitLabel> stream;
    stream.reserve(static_cast<std::size_t>(len));
    std::set<std::uint64_t> seen;
    while (stream.size() < static_cast<std::size_t>(len)) {
      std::uint64_t v = splitmix64(state) % card;
      if (seen.insert(v).second) stream.push_back(g->left().at(v));
    }
    streams.push_back(std::move(stream));
  }
  return streams;
}

}  // namespace shortlist
