#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shortlist/combinators.hpp"
#include "shortlist/lists.hpp"
#include "shortlist/machine.hpp"
#include "shortlist/matching.hpp"
#include "shortlist/pipeline.hpp"
#include "shortlist/verify.hpp"

namespace {

using namespace shortlist;

constexpr int kExitPass = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pulls --config out of the raw arguments and injects the file's entries as
// flags after the subcommand; explicitly passed flags win.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config requires a path");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
    } else {
      ++i;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config: " + path);
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  std::set<std::string> present;
  for (const std::string& a : args)
    if (a.rfind("--", 0) == 0) present.insert(a.substr(0, a.find('=')));
  std::vector<std::string> injected;
  for (const auto& [key, value] : cfg.items()) {
    std::string flag = "--" + key;
    if (present.count(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
      continue;
    }
    injected.push_back(flag);
    injected.push_back(value.is_string() ? value.get<std::string>()
                                         : value.dump());
  }
  std::size_t at = args.empty() || args[0].rfind("-", 0) == 0 ? 0 : 1;
  args.insert(args.begin() + at, injected.begin(), injected.end());
  return args;
}

void write_text(const std::string& out, const std::string& text) {
  if (out == "-" || out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write: " + out);
  f << text;
}

void write_json(const std::string& out, const nlohmann::json& j) {
  write_text(out, j.dump(2) + "\n");
}

std::vector<BitLabel> read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open: " + path);
  std::vector<BitLabel> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      labels.push_back(BitLabel::parse(line));
    } catch (const std::exception& e) {
      throw UsageError(path + " line " + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  if (labels.empty()) throw UsageError(path + " is empty");
  return labels;
}

struct BudgetFlags {
  std::uint64_t exhaustive_limit = CheckBudget{}.exhaustive_limit;
  std::uint64_t samples = CheckBudget{}.samples;
  std::uint64_t restarts = CheckBudget{}.adversarial_restarts;
  std::string mode = "auto";

  CheckBudget resolve(std::uint64_t seed) const {
    CheckBudget b;
    b.exhaustive_limit = exhaustive_limit;
    b.samples = samples;
    b.adversarial_restarts = restarts;
    b.seed = seed;
    if (mode == "auto")
      b.mode = CheckMode::Auto;
    else if (mode == "exhaustive")
      b.mode = CheckMode::Exhaustive;
    else if (mode == "sampled")
      b.mode = CheckMode::Sampled;
    else
      throw UsageError("unknown mode: " + mode);
    return b;
  }
};

void add_budget_flags(CLI::App* cmd, BudgetFlags& f) {
  cmd->add_option("--exhaustive-limit", f.exhaustive_limit,
                  "max subsets for an exhaustive scan");
  cmd->add_option("--samples", f.samples, "sampled-mode subset draws");
  cmd->add_option("--restarts", f.restarts, "adversarial greedy restarts");
  cmd->add_option("--mode", f.mode, "auto|exhaustive|sampled");
}

struct BuildArgs {
  std::string kind;
  std::optional<int> k;
  int c = 2;
  std::optional<int> cap;
  int lambda = 1;
  int alpha = 1;
  std::uint64_t seed = 0;
  int max_attempts = 16;
  std::optional<int> left_len;
  std::optional<int> right_len;
  std::optional<int> degree;
  BudgetFlags budget;
  std::string out = "-";
  std::string edges;
};

PipelineConfig pipeline_config(const BuildArgs& a) {
  if (!a.k) throw UsageError("build --kind " + a.kind + " requires --k");
  PipelineConfig cfg;
  cfg.k = *a.k;
  cfg.c = a.c;
  cfg.cap = a.cap;
  cfg.lambda = a.lambda;
  cfg.alpha = a.alpha;
  cfg.seed = a.seed;
  cfg.max_attempts = a.max_attempts;
  cfg.check = a.budget.resolve(derive_seed(a.seed, "cli-cert"));
  return cfg;
}

// The pipeline pads union right labels with a separator bit, so the condenser
// consumes (k+1)+1 bit labels by default.
int default_condenser_left_len(const PipelineConfig& cfg) {
  return cfg.k + 2;
}

int run_build(const BuildArgs& a) {
  BipartiteGraph graph;
  nlohmann::json manifest;
  std::string kind = a.kind;
  if (kind == "complete") {
    if (!a.left_len || !a.right_len)
      throw UsageError("build --kind complete requires --left-len and --right-len");
    graph = complete_bipartite(UniverseSpec::cube(*a.left_len),
                               UniverseSpec::cube(*a.right_len));
    manifest = {{"kind", "complete"}, {"provenance", "deterministic"}};
  } else if (kind == "random") {
    if (!a.left_len || !a.right_len || !a.degree)
      throw UsageError(
          "build --kind random requires --left-len, --right-len, --degree");
    RandomGraphSeed srg{a.seed, *a.degree};
    graph = random_regular_graph(UniverseSpec::cube(*a.left_len),
                                 UniverseSpec::cube(*a.right_len), srg);
    manifest = {{"kind", "random"},
                {"seed", a.seed},
                {"provenance", "splitmix64-v1"}};
  } else {
    bool is_union = kind == "union" || kind == "gk";
    bool is_condenser = kind == "condenser" || kind == "fk";
    bool is_matching = kind == "matching" || kind == "hk";
    if (!is_union && !is_condenser && !is_matching)
      throw UsageError("unknown kind: " + kind);
    PipelineConfig cfg = pipeline_config(a);
    BuildResult result;
    try {
      if (is_union) {
        result = build_block_union(cfg);
      } else if (is_condenser) {
        int left_len =
            a.left_len ? *a.left_len : default_condenser_left_len(cfg);
        result = build_condenser(cfg, left_len);
      } else {
        result = build_matching_graph(cfg);
      }
    } catch (const UsageError&) {
      throw;
    } catch (const std::runtime_error& e) {
      std::cerr << e.what() << "\n";
      return kExitPropertyFailure;
    }
    graph = result.graph;
    manifest = {{"kind", result.manifest["kind"]},
                {"provenance", "certified-random-pipeline"},
                {"build", std::move(result.manifest)}};
  }
  manifest["left"] = universe_to_json(graph->left());
  manifest["right"] = universe_to_json(graph->right());
  manifest["degree"] = graph->regular_degree();
  manifest["fingerprint"] = fingerprint_hex(graph_fingerprint(graph));
  if (!a.edges.empty()) {
    std::ofstream f(a.edges);
    if (!f) throw UsageError("cannot write: " + a.edges);
    write_edge_dump(graph, f);
  }
  write_json(a.out, manifest);
  return kExitPass;
}

struct CertifyArgs {
  std::string edges;
  std::optional<int> right_len;
  int subset = 0;
  std::optional<std::uint64_t> required;
  std::optional<std::uint64_t> delta_num;
  std::uint64_t delta_den = 2;
  std::uint64_t seed = 0;
  BudgetFlags budget;
  std::string out = "-";
};

int run_certify(const CertifyArgs& a) {
  std::ifstream in(a.edges);
  if (!in) throw UsageError("cannot open: " + a.edges);
  std::optional<UniverseSpec> declared;
  if (a.right_len) declared = UniverseSpec::cube(*a.right_len);
  BipartiteGraph g = load_edge_dump(in, declared);
  CheckBudget budget = a.budget.resolve(a.seed);
  nlohmann::json cert;
  bool pass = false;
  if (a.delta_num) {
    DispersionCertificate c =
        check_disperser(g, a.subset, *a.delta_num, a.delta_den, budget);
    pass = c.outcome.pass;
    cert = c.to_json();
  } else {
    if (!a.required)
      throw UsageError("certify requires --required or --delta-num");
    ExpansionCertificate c = check_expander(g, a.subset, *a.required, budget);
    pass = c.outcome.pass;
    cert = c.to_json();
  }
  write_json(a.out, cert);
  return pass ? kExitPass : kExitPropertyFailure;
}

struct MatchArgs {
  std::string edges;
  std::optional<int> right_len;
  std::uint64_t bound = 0;
  std::uint64_t streams = 1000;
  int stream_len = 0;
  std::uint64_t seed = 0;
  std::string out = "-";
};

int run_match(const MatchArgs& a) {
  std::ifstream in(a.edges);
  if (!in) throw UsageError("cannot open: " + a.edges);
  std::optional<UniverseSpec> declared;
  if (a.right_len) declared = UniverseSpec::cube(*a.right_len);
  BipartiteGraph g = load_edge_dump(in, declared);
  auto streams = generate_streams(g, a.streams, a.stream_len, a.seed);
  DiscardReport r = discard_bound_check(
      g, a.bound, static_cast<std::uint64_t>(a.stream_len), streams);
  write_json(a.out, r.to_json());
  return r.pass ? kExitPass : kExitPropertyFailure;
}

struct ShortlistArgs {
  std::string machine;
  std::string corpus;
  int k_max = 4;
  int c = 2;
  std::uint64_t seed = 0;
  std::uint64_t budget = 10000;
  int max_attempts = 16;
  bool emit_list = false;
  bool fallback_only = false;
  BudgetFlags check;
  std::string out = "-";
};

int run_shortlist(const ShortlistArgs& a) {
  MachineTable table = MachineTable::parse_file(a.machine);
  std::vector<BitLabel> corpus = read_labels(a.corpus);

  StackConfig sc;
  sc.k_max = a.k_max;
  sc.fallback_only = a.fallback_only;
  sc.pipeline.c = a.c;
  sc.pipeline.seed = a.seed;
  sc.pipeline.max_attempts = a.max_attempts;
  sc.pipeline.check = a.check.resolve(derive_seed(a.seed, "cli-cert"));
  std::shared_ptr<const GraphStack> stack;
  try {
    stack = std::make_shared<GraphStack>(sc);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitPropertyFailure;
  }

  MachineConfig mc;
  mc.budget = a.budget;
  StandardMachine machine(std::move(table), stack, mc);

  bool pass = true;
  for (int k = 0; k <= stack->k_max(); ++k)
    if (machine.session_discards(k) >= stack->session_bound(k)) pass = false;

  nlohmann::json reports = nlohmann::json::array();
  for (const BitLabel& x : corpus) {
    XReport r = analyze_x(machine, x);
    if (r.best_in_list < 0 || r.best_in_list > x.length() + 3) pass = false;
    nlohmann::json jr = r.to_json();
    if (a.emit_list) {
      nlohmann::json list = nlohmann::json::array();
      for (const BitLabel& p : f_of(*stack, x)) list.push_back(p.to_string());
      jr["list"] = std::move(list);
    }
    reports.push_back(std::move(jr));
  }

  nlohmann::json stack_info = nlohmann::json::array();
  for (int k = 0; k <= stack->k_max(); ++k)
    stack_info.push_back(stack->manifest(k));

  write_json(a.out, {{"machine", machine.session_report()},
                     {"stack", std::move(stack_info)},
                     {"reports", std::move(reports)},
                     {"pass", pass}});
  return pass ? kExitPass : kExitPropertyFailure;
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"short lists with short programs over certified expander graphs"};
  app.require_subcommand(1);

  BuildArgs build;
  CLI::App* build_cmd =
      app.add_subcommand("build", "construct a graph and emit its manifest");
  build_cmd->add_option("--kind", build.kind,
                        "complete|random|union|condenser|matching (gk/fk/hk)")
      ->required();
  int k_value = 0;
  CLI::Option* k_opt = build_cmd->add_option("--k", k_value, "session index");
  int cap_value = 0;
  CLI::Option* cap_opt =
      build_cmd->add_option("--cap", cap_value, "left length cap");
  build_cmd->add_option("--c", build.c, "shortness constant");
  build_cmd->add_option("--lambda", build.lambda, "envelope multiplier");
  build_cmd->add_option("--alpha", build.alpha, "envelope divisor");
  build_cmd->add_option("--seed", build.seed, "generator seed");
  build_cmd->add_option("--max-attempts", build.max_attempts,
                        "resampling attempts");
  int left_len = 0, right_len = 0, degree = 0;
  CLI::Option* ll_opt = build_cmd->add_option("--left-len", left_len);
  CLI::Option* rl_opt = build_cmd->add_option("--right-len", right_len);
  CLI::Option* dg_opt = build_cmd->add_option("--degree", degree);
  add_budget_flags(build_cmd, build.budget);
  build_cmd->add_option("--out", build.out, "manifest path, - for stdout");
  build_cmd->add_option("--edges", build.edges, "edge dump path");

  CertifyArgs certify;
  CLI::App* certify_cmd =
      app.add_subcommand("certify", "check expansion or dispersion");
  certify_cmd->add_option("--edges", certify.edges, "edge dump to check")
      ->required();
  int cert_right_len = 0;
  CLI::Option* crl_opt =
      certify_cmd->add_option("--right-len", cert_right_len,
                              "declared right cube length");
  certify_cmd->add_option("--subset", certify.subset, "subset size")
      ->required();
  std::uint64_t required_value = 0;
  CLI::Option* req_opt =
      certify_cmd->add_option("--required", required_value,
                              "required distinct neighbors");
  std::uint64_t delta_num_value = 0;
  CLI::Option* dn_opt = certify_cmd->add_option(
      "--delta-num", delta_num_value, "dispersion delta numerator");
  certify_cmd->add_option("--delta-den", certify.delta_den,
                          "dispersion delta denominator");
  certify_cmd->add_option("--seed", certify.seed, "sampling seed");
  add_budget_flags(certify_cmd, certify.budget);
  certify_cmd->add_option("--out", certify.out, "certificate path");

  MatchArgs match;
  CLI::App* match_cmd =
      app.add_subcommand("match", "stream requests and audit discards");
  match_cmd->add_option("--edges", match.edges, "edge dump to match on")
      ->required();
  int match_right_len = 0;
  CLI::Option* mrl_opt = match_cmd->add_option(
      "--right-len", match_right_len, "declared right cube length");
  match_cmd->add_option("--bound", match.bound, "max tolerated discards")
      ->required();
  match_cmd->add_option("--streams", match.streams, "number of streams");
  match_cmd->add_option("--stream-len", match.stream_len,
                        "distinct labels per stream")
      ->required();
  match_cmd->add_option("--seed", match.seed, "stream seed");
  match_cmd->add_option("--out", match.out, "report path");

  ShortlistArgs sl;
  CLI::App* sl_cmd = app.add_subcommand(
      "shortlist", "run the whole pipeline over a machine table and corpus");
  sl_cmd->add_option("--machine", sl.machine, "machine table path")
      ->required();
  sl_cmd->add_option("--corpus", sl.corpus, "corpus path, one string per line")
      ->required();
  sl_cmd->add_option("--k", sl.k_max, "largest session index");
  sl_cmd->add_option("--c", sl.c, "shortness constant");
  sl_cmd->add_option("--seed", sl.seed, "generator seed");
  sl_cmd->add_option("--budget", sl.budget, "machine step budget");
  sl_cmd->add_option("--max-attempts", sl.max_attempts, "resampling attempts");
  sl_cmd->add_flag("--emit-list", sl.emit_list, "include list entries");
  sl_cmd->add_flag("--fallback-only", sl.fallback_only,
                   "skip the certified pipeline");
  add_budget_flags(sl_cmd, sl.check);
  sl_cmd->add_option("--out", sl.out, "report path");

  std::vector<const char*> cargv;
  cargv.push_back("shortlist");
  for (const std::string& s : args) cargv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  }

  if (build_cmd->parsed()) {
    if (*k_opt) build.k = k_value;
    if (*cap_opt) build.cap = cap_value;
    if (*ll_opt) build.left_len = left_len;
    if (*rl_opt) build.right_len = right_len;
    if (*dg_opt) build.degree = degree;
    return run_build(build);
  }
  if (certify_cmd->parsed()) {
    if (*crl_opt) certify.right_len = cert_right_len;
    if (*req_opt) certify.required = required_value;
    if (*dn_opt) certify.delta_num = delta_num_value;
    return run_certify(certify);
  }
  if (match_cmd->parsed()) {
    if (*mrl_opt) match.right_len = match_right_len;
    return run_match(match);
  }
  return run_shortlist(sl);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = apply_config(std::move(args));
    return dispatch(std::move(args));
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
}
