#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "shortlist/matching.hpp"

using namespace shortlist;

namespace {

BipartiteGraph tiny() {
  // 0 -> {00, 01}, 1 -> {00, 10}
  std::vector<std::pair<BitLabel, std::vector<BitLabel>>> rows = {
      {BitLabel::parse("0"), {BitLabel::parse("00"), BitLabel::parse("01")}},
      {BitLabel::parse("1"), {BitLabel::parse("00"), BitLabel::parse("10")}},
  };
  return explicit_graph(rows, UniverseSpec::cube(2));
}

}  // namespace

TEST_CASE("requests take the first unoccupied neighbor in oracle order") {
  MatchSession s(tiny());
  CHECK(s.request(BitLabel::parse("0")) == RequestOutcome::Matched);
  CHECK(s.assignment(BitLabel::parse("0"))->to_string() == "00");
  CHECK(s.request(BitLabel::parse("1")) == RequestOutcome::Matched);
  CHECK(s.assignment(BitLabel::parse("1"))->to_string() == "10");
  CHECK(s.occupant(BitLabel::parse("00"))->to_string() == "0");
  CHECK(s.matched_count() == 2);
  CHECK(s.requests_seen() == 2);
}

TEST_CASE("re-requests are idempotent duplicates") {
  MatchSession s(tiny());
  s.request(BitLabel::parse("0"));
  CHECK(s.request(BitLabel::parse("0")) == RequestOutcome::Duplicate);
  CHECK(s.matched_count() == 1);
  CHECK(s.requests_seen() == 2);
  CHECK(s.log().size() == 2);
  CHECK(s.log()[1].outcome == RequestOutcome::Duplicate);
}

TEST_CASE("a request with no free neighbor is discarded, and stays decided") {
  std::vector<std::pair<BitLabel, std::vector<BitLabel>>> rows = {
      {BitLabel::parse("0"), {BitLabel::parse("0")}},
      {BitLabel::parse("1"), {BitLabel::parse("0")}},
  };
  MatchSession s(explicit_graph(rows, UniverseSpec::cube(1)));
  CHECK(s.request(BitLabel::parse("0")) == RequestOutcome::Matched);
  CHECK(s.request(BitLabel::parse("1")) == RequestOutcome::Discarded);
  CHECK(s.discarded().size() == 1);
  CHECK(s.request(BitLabel::parse("1")) == RequestOutcome::Duplicate);
  CHECK(s.discarded().size() == 1);
  CHECK_FALSE(s.assignment(BitLabel::parse("1")).has_value());
}

TEST_CASE("requests outside the left universe are rejected") {
  MatchSession s(tiny());
  CHECK_THROWS_WITH_AS(s.request(BitLabel::parse("00")),
                       "request outside left universe: 00",
                       std::invalid_argument);
}

TEST_CASE("generated streams are seeded, distinct, in-universe") {
  BipartiteGraph g =
      complete_bipartite(UniverseSpec::cube(3), UniverseSpec::cube(2));
  auto s1 = generate_streams(g, 5, 4, 77);
  auto s2 = generate_streams(g, 5, 4, 77);
  auto s3 = generate_streams(g, 5, 4, 78);
  CHECK(s1.size() == 5);
  CHECK(s1 == s2);
  CHECK(s1 != s3);
  for (const auto& stream : s1) {
    CHECK(stream.size() == 4);
    std::set<BitLabel> seen(stream.begin(), stream.end());
    CHECK(seen.size() == 4);
    for (const BitLabel& x : stream) CHECK(g->left().contains(x));
  }
}

TEST_CASE("discard audit passes when every stream stays under the bound") {
  BipartiteGraph g =
      complete_bipartite(UniverseSpec::cube(3), UniverseSpec::cube(3));
  auto streams = generate_streams(g, 20, 8, 5);
  DiscardReport r = discard_bound_check(g, 1, 8, streams);
  CHECK(r.pass);
  CHECK(r.streams == 20);
  CHECK(r.max_discards == 0);
  CHECK(r.bound == 1);
  CHECK_FALSE(r.violating_stream.has_value());
  nlohmann::json j = r.to_json();
  CHECK(j["streams"] == 20);
  CHECK(j["max_discards"] == 0);
  CHECK(j["bound"] == 1);
  CHECK(j["pass"] == true);
}

TEST_CASE("discard audit reports the first violating stream") {
  std::vector<std::pair<BitLabel, std::vector<BitLabel>>> rows = {
      {BitLabel::parse("0"), {BitLabel::parse("0")}},
      {BitLabel::parse("1"), {BitLabel::parse("0")}},
  };
  BipartiteGraph g = explicit_graph(rows, UniverseSpec::cube(1));
  std::vector<std::vector<BitLabel>> streams = {
      {BitLabel::parse("0")},
      {BitLabel::parse("0"), BitLabel::parse("1")},
  };
  DiscardReport r = discard_bound_check(g, 1, 2, streams);
  CHECK_FALSE(r.pass);
  CHECK(r.max_discards == 1);
  REQUIRE(r.violating_stream.has_value());
  CHECK(*r.violating_stream == 1);
}

TEST_CASE("streams beyond the certified budget are rejected") {
  BipartiteGraph g =
      complete_bipartite(UniverseSpec::cube(2), UniverseSpec::cube(1));
  std::vector<std::vector<BitLabel>> streams = {
      {BitLabel::parse("00"), BitLabel::parse("01"), BitLabel::parse("10")}};
  CHECK_THROWS_WITH(discard_bound_check(g, 1, 2, streams),
                    "stream 0 exceeds the certified request budget");
}
