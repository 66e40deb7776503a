#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "shortlist/graph.hpp"
#include "shortlist/lists.hpp"
#include "shortlist/machine.hpp"
#include "shortlist/pipeline.hpp"
#include "shortlist/verify.hpp"

namespace {

using namespace shortlist;
using Clock = std::chrono::steady_clock;

double time_of(const std::function<void()>& fn, int repeats) {
  Clock::time_point t0 = Clock::now();
  for (int i = 0; i < repeats; ++i) fn();
  return std::chrono::duration<double>(Clock::now() - t0).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernel timings"};
  int left_len = 6, right_len = 8, degree = 16, subset = 4, repeats = 3;
  std::uint64_t required = 12, seed = 42;
  std::string x_bits = "01011010010110";
  app.add_option("--left-len", left_len, "left cube length");
  app.add_option("--right-len", right_len, "right cube length");
  app.add_option("--degree", degree, "row degree");
  app.add_option("--subset", subset, "subset size for the exhaustive scan");
  app.add_option("--required", required, "required distinct neighbors");
  app.add_option("--seed", seed, "graph seed");
  app.add_option("--repeats", repeats, "timing repetitions");
  app.add_option("--x", x_bits, "string for the minimal-program search");
  CLI11_PARSE(app, argc, argv);

  BipartiteGraph g = random_regular_graph(UniverseSpec::cube(left_len),
                                          UniverseSpec::cube(right_len),
                                          RandomGraphSeed{seed, degree});
  std::uint64_t subsets =
      choose_clamped(std::uint64_t{1} << left_len, subset);
  std::cout << "exhaustive scan: |L|=" << (1 << left_len) << " subset="
            << subset << " (" << subsets << " subsets) required=" << required
            << "\n";

  CheckOutcome serial, parallel;
  double ts = time_of([&] { serial = exhaustive_scan_serial(g, subset, required); },
                      repeats);
  double tp = time_of(
      [&] { parallel = exhaustive_scan_parallel(g, subset, required); },
      repeats);
  bool agree = serial.pass == parallel.pass &&
               serial.min_neighbors_seen == parallel.min_neighbors_seen &&
               serial.witness == parallel.witness;
  std::cout << "  serial   " << ts << "s\n"
            << "  parallel " << tp << "s\n"
            << "  speedup  " << (tp > 0 ? ts / tp : 0) << "x, outcomes "
            << (agree ? "agree" : "DISAGREE") << " (pass="
            << (serial.pass ? "yes" : "no") << ", min="
            << serial.min_neighbors_seen << ")\n";

  MachineTable table;
  table.add(BitLabel::parse("00"), BitLabel::parse("010"), 3);
  table.add(BitLabel::parse("01"), BitLabel::parse("0011"), 1);
  table.add(BitLabel::parse("10"), BitLabel::parse("010011010"), 2);
  table.add(BitLabel::parse("11"), BitLabel::parse("001101011101"), 4);
  StackConfig sc;
  sc.k_max = 4;
  sc.fallback_only = true;
  StandardMachine m(std::move(table), std::make_shared<GraphStack>(sc));

  BitLabel x = BitLabel::parse(x_bits);
  std::cout << "minimal-program search: |x|=" << x.length() << " ("
            << ((std::uint64_t{2} << (x.length() + 3)) - 1)
            << " programs bound)\n";
  BruteForceResult rs, rp;
  double bs = time_of([&] { rs = brute_force_C_serial(m, x); }, repeats);
  double bp = time_of([&] { rp = brute_force_C(m, x); }, repeats);
  bool bagree = rs.c == rp.c && rs.witness == rp.witness &&
                rs.programs_tried == rp.programs_tried;
  std::cout << "  serial   " << bs << "s\n"
            << "  parallel " << bp << "s\n"
            << "  speedup  " << (bp > 0 ? bs / bp : 0) << "x, outcomes "
            << (bagree ? "agree" : "DISAGREE") << " (C=" << rs.c
            << ", witness=" << rs.witness.to_string() << ")\n";
  return agree && bagree ? 0 : 1;
}
