#include "shortlist/lists.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "shortlist/graph.hpp"

namespace shortlist {
namespace {

int ceil_log2_len(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

BitLabel with_prefix(std::uint64_t bits, int len, const BitLabel& tail) {
  return BitLabel::cat(BitLabel(bits, len), tail);
}

}  // namespace

std::vector<int> session_range(const GraphStack& stack, const BitLabel& x) {
  std::vector<int> ks;
  const int n = x.length();
  const int hi = std::min(n, stack.k_max());
  for (int k = ceil_log2_len(n); k <= hi; ++k)
    if (n <= stack.cap(k)) ks.push_back(k);
  return ks;
}

std::vector<BitLabel> list_of(const GraphStack& stack, const BitLabel& x) {
  if (x.empty())
    throw std::invalid_argument("empty string has trivial program");
  std::vector<BitLabel> out;
  out.push_back(with_prefix(0b00, 2, x));
  for (int len = 0; len < 62 && (std::uint64_t{1} << len) <
                                    static_cast<std::uint64_t>(x.length());
       ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v)
      out.push_back(with_prefix(0b01, 2, BitLabel(v, len)));
  for (int k : session_range(stack, x)) {
    const BipartiteGraph& g = stack.graph(k);
    int d = g->degree_of(x);
    for (int i = 0; i < d; ++i)
      out.push_back(with_prefix(1, 1, g->neighbor(x, i)));
  }
  return out;
}

std::vector<BitLabel> f_of(const GraphStack& stack, const BitLabel& x) {
  std::vector<BitLabel> out;
  std::set<BitLabel> seen;
  for (const BitLabel& v : list_of(stack, x)) {
    BitLabel p = with_prefix(1, 1, v);
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

ListBreakdown list_breakdown(const GraphStack& stack, const BitLabel& x) {
  if (x.empty())
    throw std::invalid_argument("empty string has trivial program");
  ListBreakdown b;
  for (int len = 0; len < 62 && (std::uint64_t{1} << len) <
                                    static_cast<std::uint64_t>(x.length());
       ++len)
    b.loaders += std::uint64_t{1} << len;
  for (int k : session_range(stack, x))
    b.degree_per_k[k] =
        static_cast<std::uint64_t>(stack.graph(k)->degree_of(x));
  b.raw_total = b.direct + b.loaders;
  for (const auto& [k, d] : b.degree_per_k) b.raw_total += d;
  return b;
}

nlohmann::json ListBreakdown::to_json() const {
  nlohmann::json per_k = nlohmann::json::object();
  for (const auto& [k, d] : degree_per_k) per_k[std::to_string(k)] = d;
  return {{"direct", direct},
          {"loaders", loaders},
          {"degree_per_k", std::move(per_k)},
          {"raw_total", raw_total}};
}

namespace {

BruteForceResult finish(const StandardMachine& m, const BitLabel& x,
                        bool parallel) {
  const int limit = x.length() + 3;
  BruteForceResult res;
  std::uint64_t below = 0;
  for (int len = 0; len <= limit; ++len) {
    const std::uint64_t total = std::uint64_t{1} << len;
    std::uint64_t winner = total;  // first program value printing x
    if (parallel) {
      std::int64_t best = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(static) reduction(min : best)
      for (std::int64_t v = 0; v < static_cast<std::int64_t>(total); ++v) {
        std::optional<BitLabel> out =
            m.eval(BitLabel(static_cast<std::uint64_t>(v), len));
        if (out && *out == x && v < best) best = v;
      }
      winner = static_cast<std::uint64_t>(best);
    } else {
      for (std::uint64_t v = 0; v < total; ++v) {
        std::optional<BitLabel> out = m.eval(BitLabel(v, len));
        if (out && *out == x) {
          winner = v;
          break;
        }
      }
    }
    if (winner < total) {
      res.c = len;
      res.witness = BitLabel(winner, len);
      res.programs_tried = below + winner + 1;
      return res;
    }
    below += total;
  }
  throw std::logic_error("minimal program search exceeded the print bound");
}

}  // namespace

BruteForceResult brute_force_C(const StandardMachine& m, const BitLabel& x) {
  return finish(m, x, true);
}

BruteForceResult brute_force_C_serial(const StandardMachine& m,
                                      const BitLabel& x) {
  return finish(m, x, false);
}

XReport analyze_x(const StandardMachine& m, const BitLabel& x) {
  XReport r;
  r.x = x;
  BruteForceResult bf = brute_force_C(m, x);
  r.c_u = bf.c;
  r.witness = bf.witness;
  std::vector<BitLabel> list = f_of(m.stack(), x);
  r.list_size = list.size();
  for (const BitLabel& p : list) {
    if (r.best_in_list >= 0 && p.length() >= r.best_in_list) continue;
    std::optional<BitLabel> out = m.eval(p);
    if (out && *out == x) r.best_in_list = p.length();
  }
  r.slack = r.best_in_list >= 0 ? r.best_in_list - r.c_u : -1;
  for (int k : session_range(m.stack(), x))
    r.discards_per_k[k] = m.session_discards(k);
  return r;
}

nlohmann::json XReport::to_json() const {
  nlohmann::json per_k = nlohmann::json::object();
  for (const auto& [k, d] : discards_per_k) per_k[std::to_string(k)] = d;
  return {{"x", x.to_string()},
          {"C_U", c_u},
          {"witness", witness.to_string()},
          {"list_size", list_size},
          {"best_in_list", best_in_list},
          {"slack", slack},
          {"discards_per_k", std::move(per_k)}};
}

}  // namespace shortlist
