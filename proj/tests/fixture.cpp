#include "fixture.hpp"

#include <set>
#include <stdexcept>

namespace shortlist::fixture {
namespace {

struct Entry {
  const char* program;
  const char* output;
};

// Output-length plan keeps every entry's minimal program at the table row:
// same-length outputs across groups use disjoint numeric bands.
const Entry kEntries[] = {
    {"00", "010"},
    {"01", "0011"},
    {"10", "010011010"},
    {"11", "001101011101"},

    {"000", "1100"},
    {"001", "1010"},
    {"010", "11011"},
    {"011", "10001"},
    {"100", "111000"},
    {"101", "100110"},
    {"110", "1110001"},
    {"111", "1011010"},

    {"0000", "00000"},
    {"0001", "00001"},
    {"0010", "00010"},
    {"0011", "00011"},
    {"0100", "000000"},
    {"0101", "000001"},
    {"0110", "000010"},
    {"0111", "000011"},
    {"1000", "0000000"},
    {"1001", "0000001"},
    {"1010", "0000010"},
    {"1011", "0000011"},
    {"1100", "00000000"},
    {"1101", "00000001"},
    {"1110", "00000010"},
    {"1111", "00000011"},

    {"00000", "000100"},
    {"00001", "000101"},
    {"00010", "0000100"},
    {"00011", "0000101"},
    {"00100", "00000100"},
    {"00101", "00000101"},
    {"00110", "000000100"},
    {"00111", "000000101"},

    {"000000", "0000110"},
    {"000001", "0000111"},
    {"000010", "0001000"},
    {"000011", "00000110"},
    {"000100", "00000111"},
    {"000101", "00001000"},
    {"000110", "000000110"},
    {"000111", "000000111"},
    {"001000", "000001000"},
    {"001001", "0000000110"},
    {"001010", "0000000111"},
    {"001011", "0000001000"},
    {"001100", "00000000110"},
    {"001101", "000000000110"},
};

const char* kExtras[] = {"111",      "0000",      "01010",
                         "101101",   "0010010",   "11110000",
                         "010101010", "1000000001"};

}  // namespace

MachineTable table() {
  MachineTable t;
  std::set<BitLabel> outputs;
  std::uint64_t steps = 1;
  for (const Entry& e : kEntries) {
    BitLabel out = BitLabel::parse(e.output);
    if (!outputs.insert(out).second)
      throw std::logic_error("fixture outputs must be pairwise distinct");
    t.add(BitLabel::parse(e.program), out, steps);
    steps = steps % 9 + 1;
  }
  for (const char* e : kExtras)
    if (outputs.count(BitLabel::parse(e)))
      throw std::logic_error("fixture extras must avoid table outputs");
  return t;
}

std::vector<BitLabel> corpus() {
  std::vector<BitLabel> xs;
  for (const Entry& e : kEntries) xs.push_back(BitLabel::parse(e.output));
  for (const char* e : kExtras) xs.push_back(BitLabel::parse(e));
  return xs;
}

std::vector<BitLabel> extras() {
  std::vector<BitLabel> xs;
  for (const char* e : kExtras) xs.push_back(BitLabel::parse(e));
  return xs;
}

std::shared_ptr<const GraphStack> desk_stack(std::uint64_t seed) {
  StackConfig sc;
  sc.k_max = 4;
  sc.pipeline.seed = seed;
  return std::make_shared<GraphStack>(sc);
}

std::shared_ptr<const GraphStack> fallback_stack(int k_max) {
  StackConfig sc;
  sc.k_max = k_max;
  sc.fallback_only = true;
  return std::make_shared<GraphStack>(sc);
}

StandardMachine desk_machine(std::uint64_t seed) {
  return StandardMachine(table(), desk_stack(seed));
}

}  // namespace shortlist::fixture
