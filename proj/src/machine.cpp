#include "shortlist/machine.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "shortlist/matching.hpp"

namespace shortlist {
namespace {

// Consumes n steps; on shortfall drains the budget and reports failure.
bool charge(std::uint64_t& budget, std::uint64_t n) {
  if (budget < n) {
    budget = 0;
    return false;
  }
  budget -= n;
  return true;
}

std::optional<BitLabel> diverge(std::uint64_t& budget) {
  budget = 0;
  return std::nullopt;
}

}  // namespace

void MachineTable::add(const BitLabel& program, const BitLabel& output,
                       std::uint64_t steps) {
  if (steps < 1) throw std::invalid_argument("machine table: steps must be positive");
  if (!entries_.emplace(program, TableEntry{output, steps}).second)
    throw std::invalid_argument("machine table: duplicate program " +
                                program.to_string());
  max_program_length_ = std::max(max_program_length_, program.length());
}

const TableEntry* MachineTable::lookup(const BitLabel& program) const {
  auto it = entries_.find(program);
  return it == entries_.end() ? nullptr : &it->second;
}

MachineTable MachineTable::parse(std::istream& in) {
  MachineTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw std::runtime_error("machine table line " + std::to_string(lineno) +
                               ": " + why);
    };
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? std::string::npos
                                             : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos ||
        line.find('\t', t2 + 1) != std::string::npos)
      fail("expected '<program>\\t<output>\\t<steps>'");
    std::string prog = line.substr(0, t1);
    std::string out = line.substr(t1 + 1, t2 - t1 - 1);
    std::string steps_text = line.substr(t2 + 1);
    BitLabel program, output;
    try {
      program = BitLabel::parse(prog);
      output = BitLabel::parse(out);
    } catch (const std::exception& e) {
      fail(e.what());
    }
    if (steps_text.empty() ||
        steps_text.find_first_not_of("0123456789") != std::string::npos)
      fail("steps must be a positive integer");
    std::uint64_t steps = 0;
    try {
      steps = std::stoull(steps_text);
    } catch (const std::exception&) {
      fail("steps must be a positive integer");
    }
    if (steps < 1) fail("steps must be a positive integer");
    try {
      table.add(program, output, steps);
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  return table;
}

MachineTable MachineTable::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open machine table: " + path);
  return parse(in);
}

void MachineTable::serialize(std::ostream& out) const {
  for (const auto& [program, entry] : entries_)
    out << program.to_string() << '\t' << entry.output.to_string() << '\t'
        << entry.steps << '\n';
}

StandardMachine::StandardMachine(MachineTable table,
                                 std::shared_ptr<const GraphStack> stack,
                                 MachineConfig cfg)
    : table_(std::move(table)), stack_(std::move(stack)), cfg_(cfg) {
  if (!stack_) throw std::invalid_argument("machine requires a graph stack");
  if (cfg_.budget == 0) throw std::invalid_argument("budget must be positive");
  // Ascending build is well founded: a length-k program can only consult the
  // session at k-3, which is already in place.
  for (int k = 0; k <= stack_->k_max(); ++k) build_session(k);
}

std::optional<BitLabel> StandardMachine::eval(const BitLabel& program) const {
  std::uint64_t budget = cfg_.budget;
  return eval_u(program, budget);
}

StandardMachine::EvalResult StandardMachine::eval_counted(
    const BitLabel& program) const {
  std::uint64_t budget = cfg_.budget;
  EvalResult r;
  r.output = eval_u(program, budget);
  r.consumed = cfg_.budget - budget;
  return r;
}

std::optional<BitLabel> StandardMachine::eval_u(const BitLabel& p,
                                                std::uint64_t& budget) const {
  if (!charge(budget, 1)) return std::nullopt;
  if (p.empty()) return diverge(budget);
  BitLabel rest = p.drop(1);
  if (p.bit(0) == 0) {
    const TableEntry* entry = table_.lookup(rest);
    if (!entry) return diverge(budget);
    if (!charge(budget, entry->steps)) return std::nullopt;
    return entry->output;
  }
  return eval_v(rest, budget);
}

std::optional<BitLabel> StandardMachine::eval_v(const BitLabel& v,
                                                std::uint64_t& budget) const {
  if (v.empty()) return diverge(budget);
  if (v.bit(0) == 0) {
    if (v.length() < 2) return diverge(budget);
    BitLabel p = v.drop(2);
    if (v.bit(1) == 0) {
      if (!charge(budget, 1)) return std::nullopt;
      return p;
    }
    std::optional<BitLabel> x = eval_u(p, budget);
    if (!x) return std::nullopt;
    bool longer = p.length() < 62 &&
                  static_cast<std::uint64_t>(x->length()) >
                      (std::uint64_t{1} << p.length());
    if (!longer) return diverge(budget);
    return x;
  }
  BitLabel r = v.drop(1);
  int k = r.length() - 1;
  if (k < 0 || k >= static_cast<int>(sessions_.size()))
    return diverge(budget);
  const auto& assignment = sessions_[static_cast<std::size_t>(k)].assignment;
  auto it = assignment.find(r);
  if (it == assignment.end()) return diverge(budget);
  if (!charge(budget, 1)) return std::nullopt;
  return it->second;
}

std::vector<StandardMachine::Halting> StandardMachine::enumerate_outputs(
    int k) const {
  if (k < 0 || k > 26)
    throw std::invalid_argument("program length out of enumeration range");
  std::vector<Halting> halting;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
    BitLabel p(v, k);
    EvalResult r = eval_counted(p);
    if (r.output) halting.push_back({p, *r.output, r.consumed});
  }
  std::stable_sort(halting.begin(), halting.end(),
                   [](const Halting& a, const Halting& b) {
                     if (a.steps != b.steps) return a.steps < b.steps;
                     return a.program < b.program;
                   });
  std::vector<Halting> out;
  std::set<BitLabel> seen;
  for (auto& h : halting)
    if (seen.insert(h.output).second) out.push_back(std::move(h));
  return out;
}

void StandardMachine::build_session(int k) {
  Session s;
  MatchSession match(stack_->graph(k));
  const int cap = stack_->cap(k);
  for (const Halting& h : enumerate_outputs(k)) {
    const BitLabel& x = h.output;
    if (x.length() < k || x.length() > cap) continue;
    RequestOutcome outcome = match.request(x);
    if (outcome == RequestOutcome::Matched) {
      std::optional<BitLabel> r = match.assignment(x);
      s.assignment.emplace(*r, x);
    }
  }
  s.requests = match.requests_seen();
  s.discards = match.discarded().size();
  sessions_.push_back(std::move(s));
}

const std::map<BitLabel, BitLabel>& StandardMachine::session_assignment(
    int k) const {
  if (k < 0 || k >= static_cast<int>(sessions_.size()))
    throw std::out_of_range("session: k");
  return sessions_[static_cast<std::size_t>(k)].assignment;
}

std::uint64_t StandardMachine::session_requests(int k) const {
  if (k < 0 || k >= static_cast<int>(sessions_.size()))
    throw std::out_of_range("session: k");
  return sessions_[static_cast<std::size_t>(k)].requests;
}

std::uint64_t StandardMachine::session_discards(int k) const {
  if (k < 0 || k >= static_cast<int>(sessions_.size()))
    throw std::out_of_range("session: k");
  return sessions_[static_cast<std::size_t>(k)].discards;
}

nlohmann::json StandardMachine::session_report() const {
  nlohmann::json per_k = nlohmann::json::array();
  for (int k = 0; k < static_cast<int>(sessions_.size()); ++k) {
    const Session& s = sessions_[static_cast<std::size_t>(k)];
    per_k.push_back({{"k", k},
                     {"requests", s.requests},
                     {"matched", s.assignment.size()},
                     {"discards", s.discards},
                     {"bound", stack_->session_bound(k)}});
  }
  return {{"budget", cfg_.budget},
          {"table_size", table_.size()},
          {"sessions", std::move(per_k)}};
}

}  // namespace shortlist
