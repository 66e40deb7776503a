#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shortlist/bitlabel.hpp"
#include "shortlist/pipeline.hpp"

namespace shortlist {

struct TableEntry {
  BitLabel output;
  std::uint64_t steps = 1;
};

// Finite lookup table standing in for an arbitrary machine: program bits map
// to an output and a step count. Text form is one entry per line,
// '<program>\t<output>\t<steps>'.
class MachineTable {
 public:
  void add(const BitLabel& program, const BitLabel& output,
           std::uint64_t steps);
  const TableEntry* lookup(const BitLabel& program) const;
  std::size_t size() const { return entries_.size(); }
  int max_program_length() const { return max_program_length_; }
  const std::map<BitLabel, TableEntry>& entries() const { return entries_; }

  static MachineTable parse(std::istream& in);
  static MachineTable parse_file(const std::string& path);
  void serialize(std::ostream& out) const;

 private:
  std::map<BitLabel, TableEntry> entries_;
  int max_program_length_ = -1;
};

struct MachineConfig {
  std::uint64_t budget = 10000;  // shared step budget per top-level run
};

// Dispatch machine over the table plus the fixed decompressor: programs
// '0'q run the table at q, programs '1'v run the decompressor at v.
// Decompressor clauses: '00'p prints p; '01'p runs the dispatch machine on p
// inside the shared budget and keeps the output only when it is strictly
// longer than 2^|p|; '1'r reads r as a right node of the length-(|r|-1)
// session and prints its matched output. Divergence (structural or budget
// exhaustion) is nullopt and drains the budget.
class StandardMachine {
 public:
  StandardMachine(MachineTable table, std::shared_ptr<const GraphStack> stack,
                  MachineConfig cfg = {});

  std::optional<BitLabel> eval(const BitLabel& program) const;
  struct EvalResult {
    std::optional<BitLabel> output;
    std::uint64_t consumed = 0;
  };
  EvalResult eval_counted(const BitLabel& program) const;

  // Halting length-k programs in dovetail order: ascending consumed steps,
  // ties by program bits; one entry per distinct output (first win).
  struct Halting {
    BitLabel program;
    BitLabel output;
    std::uint64_t steps = 0;
  };
  std::vector<Halting> enumerate_outputs(int k) const;

  const std::map<BitLabel, BitLabel>& session_assignment(int k) const;
  std::uint64_t session_requests(int k) const;
  std::uint64_t session_discards(int k) const;
  nlohmann::json session_report() const;

  const MachineTable& table() const { return table_; }
  const GraphStack& stack() const { return *stack_; }
  int k_max() const { return stack_->k_max(); }
  std::uint64_t budget() const { return cfg_.budget; }

 private:
  struct Session {
    std::map<BitLabel, BitLabel> assignment;  // right node -> printed output
    std::uint64_t requests = 0;
    std::uint64_t discards = 0;
  };

  std::optional<BitLabel> eval_u(const BitLabel& p, std::uint64_t& budget) const;
  std::optional<BitLabel> eval_v(const BitLabel& v, std::uint64_t& budget) const;
  void build_session(int k);

  MachineTable table_;
  std::shared_ptr<const GraphStack> stack_;
  MachineConfig cfg_;
  std::vector<Session> sessions_;
};

}  // namespace shortlist
