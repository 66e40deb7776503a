#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "fixture.hpp"
#include "shortlist/lists.hpp"

using namespace shortlist;

TEST_CASE("the empty string is rejected by name") {
  auto stack = fixture::fallback_stack(4);
  CHECK_THROWS_WITH(list_of(*stack, BitLabel()),
                    "empty string has trivial program");
  CHECK_THROWS_WITH(list_breakdown(*stack, BitLabel()),
                    "empty string has trivial program");
}

TEST_CASE("a length-4 string gets exactly the three short loaders") {
  auto stack = fixture::fallback_stack(4);
  std::vector<std::string> loaders;
  for (const BitLabel& v : list_of(*stack, BitLabel::parse("0110"))) {
    std::string s = v.to_string();
    if (s.rfind("01", 0) == 0 && s.size() <= 4) loaders.push_back(s);
  }
  CHECK(loaders == std::vector<std::string>{"01", "010", "011"});
}

TEST_CASE("session range tiles lengths against graph windows") {
  auto stack = fixture::fallback_stack(4);
  CHECK(session_range(*stack, BitLabel::parse("1")) ==
        std::vector<int>{0, 1});
  CHECK(session_range(*stack, BitLabel::parse("010")) ==
        std::vector<int>{2, 3});
  CHECK(session_range(*stack, BitLabel::parse("0110")) ==
        std::vector<int>{2, 3, 4});
  CHECK(session_range(*stack, BitLabel::parse("01100110")) ==
        std::vector<int>{});
  auto deep = fixture::fallback_stack(12);
  CHECK(session_range(*deep, BitLabel::parse("01100110")) ==
        std::vector<int>{5, 6, 7, 8});
}

TEST_CASE("list parts: direct print, loaders, then graph rows") {
  auto stack = fixture::fallback_stack(4);
  BitLabel x = BitLabel::parse("010");
  auto list = list_of(*stack, x);
  REQUIRE(!list.empty());
  CHECK(list[0].to_string() == "00010");
  ListBreakdown b = list_breakdown(*stack, x);
  CHECK(b.direct == 1);
  CHECK(b.loaders == 3);  // lengths 0 and 1: 1 + 2
  CHECK(b.degree_per_k.at(2) == 8);
  CHECK(b.degree_per_k.at(3) == 16);
  CHECK(b.raw_total == 1 + 3 + 8 + 16);
  CHECK(list.size() == b.raw_total);
}

TEST_CASE("the machine list prepends the dispatch bit and dedups") {
  auto stack = fixture::fallback_stack(4);
  BitLabel x = BitLabel::parse("010");
  auto list = f_of(*stack, x);
  ListBreakdown b = list_breakdown(*stack, x);
  // Complete fallback rows have no duplicate edges, so nothing collapses.
  CHECK(list.size() == b.raw_total);
  for (const BitLabel& p : list) CHECK(p.bit(0) == 1);
  std::set<BitLabel> dedup(list.begin(), list.end());
  CHECK(dedup.size() == list.size());
  CHECK(std::count(list.begin(), list.end(), BitLabel::parse("100010")) == 1);
}

TEST_CASE("minimal-program search matches the hand-computed base case") {
  StandardMachine m(MachineTable{}, fixture::fallback_stack(4));
  BruteForceResult r = brute_force_C(m, BitLabel::parse("0"));
  CHECK(r.c == 4);
  CHECK(r.witness.to_string() == "1000");
  CHECK(r.programs_tried == 24);
  BruteForceResult s = brute_force_C_serial(m, BitLabel::parse("0"));
  CHECK(s.c == r.c);
  CHECK(s.witness == r.witness);
  CHECK(s.programs_tried == r.programs_tried);
}

TEST_CASE("parallel and serial searches agree on the fixture corpus") {
  StandardMachine m(fixture::table(), fixture::fallback_stack(4));
  int checked = 0;
  for (const BitLabel& x : fixture::corpus()) {
    if (x.length() > 6) continue;  // keep the unit test quick
    BruteForceResult a = brute_force_C(m, x);
    BruteForceResult b = brute_force_C_serial(m, x);
    CHECK(a.c == b.c);
    CHECK(a.witness == b.witness);
    CHECK(a.programs_tried == b.programs_tried);
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("witnesses re-evaluate to their string") {
  StandardMachine m(fixture::table(), fixture::fallback_stack(4));
  for (const BitLabel& x : fixture::corpus()) {
    if (x.length() > 5) continue;
    BruteForceResult r = brute_force_C(m, x);
    auto out = m.eval(r.witness);
    REQUIRE(out.has_value());
    CHECK(*out == x);
  }
}

TEST_CASE("table rows pin the expected program complexity") {
  StandardMachine m(fixture::table(), fixture::fallback_stack(4));
  CHECK(brute_force_C(m, BitLabel::parse("010")).c == 3);
  CHECK(brute_force_C(m, BitLabel::parse("0011")).c == 3);
  CHECK(brute_force_C(m, BitLabel::parse("1100")).c == 4);
  CHECK(brute_force_C(m, BitLabel::parse("11011")).c == 4);
  CHECK(brute_force_C(m, BitLabel::parse("00000")).c == 5);
  // Extras print directly and nothing shorter reaches them.
  CHECK(brute_force_C(m, BitLabel::parse("111")).c == 6);
  CHECK(brute_force_C(m, BitLabel::parse("0000")).c == 7);
}

TEST_CASE("reports carry complexity, list size, and slack") {
  StandardMachine m = fixture::desk_machine();
  XReport r = analyze_x(m, BitLabel::parse("010"));
  CHECK(r.c_u == 3);
  CHECK(r.witness.to_string() == "000");
  CHECK(r.best_in_list == 6);
  CHECK(r.slack == 3);
  CHECK(r.discards_per_k.at(2) == 0);
  CHECK(r.discards_per_k.at(3) == 0);
  nlohmann::json j = r.to_json();
  CHECK(j["x"] == "010");
  CHECK(j["C_U"] == 3);
  CHECK(j["witness"] == "000");
  CHECK(j["best_in_list"] == 6);
  CHECK(j["slack"] == 3);
  CHECK(j["list_size"] == r.list_size);
  CHECK(j["discards_per_k"]["2"] == 0);
}

TEST_CASE("loader entries rescue highly compressible long strings") {
  StandardMachine m = fixture::desk_machine();
  // |x| = 9 exceeds every session window, but 2^3 < 9 puts the table row's
  // loader in the list at length C_U + 3.
  XReport r = analyze_x(m, BitLabel::parse("010011010"));
  CHECK(r.c_u == 3);
  CHECK(r.best_in_list == 6);
  CHECK(r.slack == 3);
  CHECK(r.discards_per_k.empty());
}

TEST_CASE("direct print bounds every string") {
  StandardMachine m = fixture::desk_machine();
  for (const BitLabel& x : fixture::extras()) {
    XReport r = analyze_x(m, x);
    CHECK(r.c_u == x.length() + 3);
    CHECK(r.best_in_list <= x.length() + 3);
    CHECK(r.slack >= 0);
  }
}
