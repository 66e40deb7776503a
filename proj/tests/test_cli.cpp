#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir() {
  fs::path p = fs::temp_directory_path() / "shortlist_cli_tests";
  fs::create_directories(p);
  return p;
}

fs::path write_file(const std::string& name, const std::string& body) {
  fs::path p = scratch_dir() / name;
  std::ofstream f(p);
  REQUIRE(f.good());
  f << body;
  return p;
}

nlohmann::json slurp_json(const fs::path& p) {
  std::ifstream f(p);
  REQUIRE(f.good());
  nlohmann::json j;
  f >> j;
  return j;
}

}  // namespace

TEST_CASE("build complete graph emits manifest on stdout") {
  RunResult r = run_cli("build --kind complete --left-len 3 --right-len 2");
  CHECK(r.exit_code == 0);
  nlohmann::json m = nlohmann::json::parse(r.output);
  CHECK(m["kind"] == "complete");
  CHECK(m["degree"] == 4);
  CHECK(m["left"]["min_len"] == 3);
  CHECK(m["left"]["max_len"] == 3);
  CHECK(m["left"]["cardinality"] == 8);
  CHECK(m["right"]["cardinality"] == 4);
  CHECK(m["fingerprint"].is_string());
  CHECK(!m["fingerprint"].get<std::string>().empty());
}

TEST_CASE("build matching graph for k=3 certifies and reports structure") {
  fs::path out = scratch_dir() / "hk3.json";
  RunResult r = run_cli(
      "build --kind hk --k 3 --c 2 --cap 6 --seed 42 --out " + out.string());
  CHECK(r.exit_code == 0);
  nlohmann::json m = slurp_json(out);
  CHECK(m["kind"] == "matching_graph");
  CHECK(m["provenance"] == "certified-random-pipeline");
  CHECK(m["degree"] == 192);
  CHECK(m["left"]["cardinality"] == 120);
  CHECK(m["right"]["min_len"] == 4);
  CHECK(m["right"]["max_len"] == 4);
  CHECK(m["build"]["certificate"]["pass"] == true);
  CHECK(m["build"]["certificate"]["subset_size"] == 2);
  CHECK(m["build"]["certificate"]["required_neighbors"] == 8);
  CHECK(m["build"]["min_degree_certificate"]["pass"] == true);
}

TEST_CASE("build union and condenser kinds work standalone") {
  RunResult u = run_cli("build --kind union --k 2 --seed 42");
  CHECK(u.exit_code == 0);
  nlohmann::json mu = nlohmann::json::parse(u.output);
  CHECK(mu["kind"] == "block_union");
  CHECK(mu["degree"] == 4);

  RunResult c = run_cli("build --kind fk --k 2 --seed 42");
  CHECK(c.exit_code == 0);
  nlohmann::json mc = nlohmann::json::parse(c.output);
  CHECK(mc["kind"] == "condenser");
  CHECK(mc["right"]["min_len"] == 3);
  CHECK(mc["build"]["copies"] == 4);
}

TEST_CASE("build pipeline kinds require --k") {
  RunResult r = run_cli("build --kind hk");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("requires --k") != std::string::npos);
}

TEST_CASE("unknown kind and unknown flag are usage errors") {
  CHECK(run_cli("build --kind nonsense --k 2").exit_code == 2);
  CHECK(run_cli("build --kind complete --left-len 2 --right-len 2 --bogus 1")
            .exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("help exits zero and lists subcommands") {
  RunResult r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("build") != std::string::npos);
  CHECK(r.output.find("certify") != std::string::npos);
  CHECK(r.output.find("shortlist") != std::string::npos);
}

TEST_CASE("certify rejects the star graph and accepts the complete graph") {
  fs::path star = write_file("star.edges", "0 00\n1 00\n");
  fs::path cert_out = scratch_dir() / "star_cert.json";
  RunResult bad = run_cli("certify --edges " + star.string() +
                          " --subset 2 --required 2 --out " +
                          cert_out.string());
  CHECK(bad.exit_code == 1);
  nlohmann::json cert = slurp_json(cert_out);
  CHECK(cert["pass"] == false);
  CHECK(cert["witness"].size() == 2);
  CHECK(cert["min_neighbors_seen"] == 1);

  fs::path edges = scratch_dir() / "complete22.edges";
  RunResult built = run_cli(
      "build --kind complete --left-len 2 --right-len 2 --edges " +
      edges.string() + " --out /dev/null");
  REQUIRE(built.exit_code == 0);
  RunResult good = run_cli("certify --edges " + edges.string() +
                           " --subset 2 --required 2");
  CHECK(good.exit_code == 0);
  nlohmann::json ok = nlohmann::json::parse(good.output);
  CHECK(ok["pass"] == true);
  CHECK(ok["mode"] == "exhaustive");
}

TEST_CASE("certify disperser mode uses the delta fraction") {
  fs::path edges = scratch_dir() / "complete23.edges";
  REQUIRE(run_cli("build --kind complete --left-len 2 --right-len 3 --edges " +
                  edges.string() + " --out /dev/null")
              .exit_code == 0);
  RunResult r = run_cli("certify --edges " + edges.string() +
                        " --subset 1 --delta-num 1 --delta-den 2");
  CHECK(r.exit_code == 0);
  nlohmann::json cert = nlohmann::json::parse(r.output);
  CHECK(cert["type"] == "dispersion");
  CHECK(cert["delta"]["num"] == 1);
  CHECK(cert["required_neighbors"] == 4);
}

TEST_CASE("certify without a target is a usage error") {
  fs::path star = write_file("star2.edges", "0 00\n1 00\n");
  RunResult r = run_cli("certify --edges " + star.string() + " --subset 1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("--required or --delta-num") != std::string::npos);
}

TEST_CASE("match audits discard bounds over seeded streams") {
  fs::path edges = scratch_dir() / "match22.edges";
  REQUIRE(run_cli("build --kind complete --left-len 2 --right-len 2 --edges " +
                  edges.string() + " --out /dev/null")
              .exit_code == 0);
  RunResult pass = run_cli("match --edges " + edges.string() +
                           " --bound 1 --streams 5 --stream-len 4 --seed 7");
  CHECK(pass.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(pass.output);
  CHECK(rep["streams"] == 5);
  CHECK(rep["max_discards"] == 0);
  CHECK(rep["pass"] == true);

  RunResult fail = run_cli("match --edges " + edges.string() +
                           " --bound 0 --streams 2 --stream-len 4 --seed 7");
  CHECK(fail.exit_code == 1);
  nlohmann::json bad = nlohmann::json::parse(fail.output);
  CHECK(bad["pass"] == false);
}

TEST_CASE("shortlist runs the full pipeline over a table and corpus") {
  fs::path machine = write_file(
      "m.tsv", "00\t010\t3\n01\t0011\t1\n10\t010011010\t2\n11\t001101011101\t4\n");
  fs::path corpus = write_file("c.txt", "010\n0011\n");
  fs::path out = scratch_dir() / "sl.json";
  RunResult r = run_cli("shortlist --machine " + machine.string() +
                        " --corpus " + corpus.string() +
                        " --k 3 --seed 42 --out " + out.string());
  CHECK(r.exit_code == 0);
  nlohmann::json rep = slurp_json(out);
  CHECK(rep["pass"] == true);
  CHECK(rep["stack"].size() == 4);
  CHECK(rep["machine"]["sessions"].size() == 4);
  CHECK(rep["machine"]["sessions"][3]["requests"] == 2);
  CHECK(rep["machine"]["sessions"][3]["discards"] == 0);
  REQUIRE(rep["reports"].size() == 2);
  CHECK(rep["reports"][0]["x"] == "010");
  CHECK(rep["reports"][0]["C_U"] == 3);
  CHECK(rep["reports"][0]["witness"] == "000");
  CHECK(rep["reports"][0]["best_in_list"] == 6);
  CHECK(rep["reports"][0]["slack"] == 3);
  CHECK(rep["reports"][1]["x"] == "0011");
  CHECK(rep["reports"][1]["slack"] == 3);
}

TEST_CASE("shortlist --emit-list includes the deduplicated program list") {
  fs::path machine = write_file("m2.tsv", "00\t010\t3\n");
  fs::path corpus = write_file("c2.txt", "010\n");
  RunResult r = run_cli("shortlist --machine " + machine.string() +
                        " --corpus " + corpus.string() +
                        " --k 2 --seed 42 --emit-list");
  CHECK(r.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(r.output);
  const auto& list = rep["reports"][0]["list"];
  REQUIRE(list.is_array());
  CHECK(list.size() == rep["reports"][0]["list_size"]);
  bool has_direct = false;
  for (const auto& p : list)
    if (p == "100010") has_direct = true;
  CHECK(has_direct);
}

TEST_CASE("malformed machine table reports the offending line") {
  fs::path machine = write_file("bad.tsv", "00\t010\n");
  fs::path corpus = write_file("c3.txt", "010\n");
  RunResult r = run_cli("shortlist --machine " + machine.string() +
                        " --corpus " + corpus.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("machine table line 1") != std::string::npos);
}

TEST_CASE("config file supplies defaults and flags override it") {
  fs::path cfg = write_file(
      "cfg.json", "{\"kind\": \"complete\", \"left-len\": 2, \"right-len\": 2}");
  RunResult base = run_cli("build --config " + cfg.string());
  CHECK(base.exit_code == 0);
  nlohmann::json m = nlohmann::json::parse(base.output);
  CHECK(m["left"]["cardinality"] == 4);

  RunResult over = run_cli("build --config " + cfg.string() + " --left-len 3");
  CHECK(over.exit_code == 0);
  nlohmann::json m2 = nlohmann::json::parse(over.output);
  CHECK(m2["left"]["cardinality"] == 8);

  RunResult missing = run_cli("build --config /nonexistent.json");
  CHECK(missing.exit_code == 2);
}
