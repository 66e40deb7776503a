#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <sstream>
#include <stdexcept>

#include "shortlist/graph.hpp"

using namespace shortlist;

TEST_CASE("complete graph connects every pair") {
  BipartiteGraph g =
      complete_bipartite(UniverseSpec::cube(2), UniverseSpec::cube(1));
  CHECK(g->regular_degree() == 2);
  for (const BitLabel& x : enumerate_left(g)) {
    CHECK(g->degree_of(x) == 2);
    CHECK(g->neighbor(x, 0).to_string() == "0");
    CHECK(g->neighbor(x, 1).to_string() == "1");
  }
  CHECK_THROWS_AS(g->neighbor(BitLabel::parse("00"), 2), std::out_of_range);
  CHECK(!g->left().contains(BitLabel::parse("000")));
}

TEST_CASE("random graph rows are distinct samples inside the right universe") {
  RandomGraphSeed srg{123, 5};
  BipartiteGraph g = random_regular_graph(UniverseSpec::cube(4),
                                          UniverseSpec::cube(3), srg);
  CHECK(g->regular_degree() == 5);
  for (const BitLabel& x : enumerate_left(g)) {
    std::set<BitLabel> row;
    for (int i = 0; i < 5; ++i) {
      BitLabel r = g->neighbor(x, i);
      CHECK(r.length() == 3);
      row.insert(r);
    }
    CHECK(row.size() == 5);
  }
}

TEST_CASE("random graphs are reproducible from the seed") {
  RandomGraphSeed srg{99, 3};
  BipartiteGraph a = random_regular_graph(UniverseSpec::cube(3),
                                          UniverseSpec::cube(2), srg);
  BipartiteGraph b = random_regular_graph(UniverseSpec::cube(3),
                                          UniverseSpec::cube(2), srg);
  CHECK(graph_fingerprint(a) == graph_fingerprint(b));
  RandomGraphSeed other{100, 3};
  BipartiteGraph c = random_regular_graph(UniverseSpec::cube(3),
                                          UniverseSpec::cube(2), other);
  CHECK(graph_fingerprint(a) != graph_fingerprint(c));
}

TEST_CASE("random graph degree cannot exceed the right universe") {
  RandomGraphSeed srg{1, 5};
  CHECK_THROWS_AS(random_regular_graph(UniverseSpec::cube(2),
                                       UniverseSpec::cube(2), srg),
                  std::invalid_argument);
}

TEST_CASE("degenerate graphs are rejected by name") {
  RandomGraphSeed zero{1, 0};
  CHECK_THROWS_WITH(random_regular_graph(UniverseSpec::cube(2),
                                         UniverseSpec::cube(2), zero),
                    "degenerate graph");
  std::vector<std::pair<BitLabel, std::vector<BitLabel>>> rows = {
      {BitLabel::parse("0"), {BitLabel::parse("00")}}, {BitLabel::parse("1"), {}}};
  CHECK_THROWS_WITH(explicit_graph(rows), "degenerate graph");
}

TEST_CASE("explicit graph keeps row order and detects uniform degree") {
  std::vector<std::pair<BitLabel, std::vector<BitLabel>>> rows = {
      {BitLabel::parse("0"), {BitLabel::parse("11"), BitLabel::parse("00")}},
      {BitLabel::parse("1"), {BitLabel::parse("00"), BitLabel::parse("01")}},
  };
  BipartiteGraph g = explicit_graph(rows);
  CHECK(g->regular_degree() == 2);
  CHECK(g->neighbor(BitLabel::parse("0"), 0).to_string() == "11");
  CHECK(g->neighbor(BitLabel::parse("0"), 1).to_string() == "00");
  CHECK(g->right().cardinality() == 3);

  rows[1].second.push_back(BitLabel::parse("10"));
  BipartiteGraph h = explicit_graph(rows);
  CHECK(h->regular_degree() == -1);
  CHECK(h->degree_of(BitLabel::parse("1")) == 3);
}

TEST_CASE("explicit graph validates a declared right universe") {
  std::vector<std::pair<BitLabel, std::vector<BitLabel>>> rows = {
      {BitLabel::parse("0"), {BitLabel::parse("11")}}};
  CHECK_THROWS_WITH(explicit_graph(rows, UniverseSpec::cube(1)),
                    "edge endpoint outside right universe");
}

TEST_CASE("edge dump round-trips") {
  RandomGraphSeed srg{7, 3};
  BipartiteGraph g = random_regular_graph(UniverseSpec::cube(3),
                                          UniverseSpec::cube(2), srg);
  std::stringstream ss;
  write_edge_dump(g, ss);
  BipartiteGraph back = load_edge_dump(ss, g->right());
  CHECK(back->left() == g->left());
  CHECK(back->right() == g->right());
  for (const BitLabel& x : enumerate_left(g))
    CHECK(neighbor_row(back, x) == neighbor_row(g, x));
}

TEST_CASE("edge dump lines are '<left> <right>' sorted by left then index") {
  BipartiteGraph g =
      complete_bipartite(UniverseSpec::cube(1), UniverseSpec::cube(1));
  std::stringstream ss;
  write_edge_dump(g, ss);
  CHECK(ss.str() == "0 0\n0 1\n1 0\n1 1\n");
}

TEST_CASE("edge dump parse errors carry the line number") {
  std::stringstream bad("0 1\nnot-an-edge\n");
  CHECK_THROWS_WITH_AS(load_edge_dump(bad, std::nullopt),
                       "edge dump line 2: expected '<left> <right>'",
                       std::invalid_argument);
  std::stringstream empty("");
  CHECK_THROWS_WITH(load_edge_dump(empty, std::nullopt), "edge dump is empty");
}

TEST_CASE("distinct neighbor counts collapse duplicate edges") {
  std::vector<std::pair<BitLabel, std::vector<BitLabel>>> rows = {
      {BitLabel::parse("0"),
       {BitLabel::parse("1"), BitLabel::parse("1"), BitLabel::parse("0")}}};
  BipartiteGraph g = explicit_graph(rows);
  CHECK(g->degree_of(BitLabel::parse("0")) == 3);
  CHECK(distinct_neighbors(g, BitLabel::parse("0")).size() == 2);
}
