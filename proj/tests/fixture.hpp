#pragma once

#include <memory>
#include <vector>

#include "shortlist/machine.hpp"
#include "shortlist/pipeline.hpp"

namespace shortlist::fixture {

// 50-entry table: programs of length 2..6, outputs of length 3..12, pairwise
// distinct outputs, step counts cycling 1..9.
MachineTable table();

// Table outputs in entry order followed by the extra strings.
std::vector<BitLabel> corpus();
std::vector<BitLabel> extras();

std::shared_ptr<const GraphStack> desk_stack(std::uint64_t seed = 42);
std::shared_ptr<const GraphStack> fallback_stack(int k_max);
StandardMachine desk_machine(std::uint64_t seed = 42);

}  // namespace shortlist::fixture
