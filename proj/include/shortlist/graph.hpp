#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "json.hpp"
#include "shortlist/bitlabel.hpp"
#include "shortlist/universe.hpp"

namespace shortlist {

// Immutable bipartite graph with an explicit neighbor oracle.
// neighbor(x, i) is deterministic, total for 0 <= i < degree_of(x), and
// safe to call from concurrent readers. Rows may repeat a right label;
// set-valued computations deduplicate.
class GraphImpl {
 public:
  GraphImpl(UniverseSpec left, UniverseSpec right)
      : left_(std::move(left)), right_(std::move(right)) {}
  virtual ~GraphImpl() = default;

  const UniverseSpec& left() const { return left_; }
  const UniverseSpec& right() const { return right_; }
  virtual int degree_of(const BitLabel& x) const = 0;
  virtual BitLabel neighbor(const BitLabel& x, int i) const = 0;

  // Common degree when the graph is known left-regular, -1 otherwise.
  int regular_degree() const { return regular_degree_; }

  // Structural description (kind, parameters, seeds, sub-graphs). Attached
  // certificates live beside it in build manifests, not inside it, so the
  // fingerprint of the structure is stable.
  const nlohmann::json& structure() const { return structure_; }
  void set_structure(nlohmann::json s) { structure_ = std::move(s); }

 protected:
  UniverseSpec left_;
  UniverseSpec right_;
  int regular_degree_ = -1;
  nlohmann::json structure_;
};

using BipartiteGraph = std::shared_ptr<const GraphImpl>;

struct RandomGraphSeed {
  std::uint64_t seed = 0;
  int degree = 1;
};

// Degree |right|; neighbor(x, i) = i-th right label in (length, lex) order.
BipartiteGraph complete_bipartite(const UniverseSpec& left,
                                  const UniverseSpec& right);

// Left-regular; each row drawn without replacement from the right universe
// by a splitmix64 stream keyed by (seed, x). Regenerable bit-exact.
BipartiteGraph random_regular_graph(const UniverseSpec& left,
                                    const UniverseSpec& right,
                                    const RandomGraphSeed& srg);

// Graph given by explicit rows (one per left label, in left label order).
BipartiteGraph explicit_graph(
    std::vector<std::pair<BitLabel, std::vector<BitLabel>>> rows,
    std::optional<UniverseSpec> declared_right = std::nullopt);

// Every left label exactly once, ordered by (length, lexicographic).
std::vector<BitLabel> enumerate_left(const BipartiteGraph& g);

// The full neighbor row of x (duplicates retained).
std::vector<BitLabel> neighbor_row(const BipartiteGraph& g, const BitLabel& x);

// Sorted distinct neighbor set of x.
std::vector<BitLabel> distinct_neighbors(const BipartiteGraph& g,
                                         const BitLabel& x);

// One line per edge, "<left-bits> <right-bits>", sorted by left label then
// neighbor index.
void write_edge_dump(const BipartiteGraph& g, std::ostream& out);
BipartiteGraph load_edge_dump(std::istream& in,
                              std::optional<UniverseSpec> declared_right =
                                  std::nullopt);

nlohmann::json universe_to_json(const UniverseSpec& u);

// FNV-1a over the canonical (sorted-key, compact) JSON dump of the
// structure record; identifies a graph in certificates.
std::uint64_t graph_fingerprint(const BipartiteGraph& g);
std::string fingerprint_hex(std::uint64_t fp);

}  // namespace shortlist
