#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "kpaths/errors.hpp"
#include "kpaths/generate.hpp"
#include "kpaths/graph.hpp"
#include "kpaths/pathdb.hpp"
#include "kpaths/selfcheck.hpp"
#include "kpaths/vsop.hpp"
#include "kpaths/zbdd.hpp"

namespace {

using nlohmann::ordered_json;
using namespace kpaths;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitQuery = 3;
constexpr int kExitMemoryGuard = 4;

struct QueryArgs {
  std::string input;
  std::string mode = "longest";
  std::uint64_t k = 0;
  bool k_given = false;
  bool kth = false;
  bool prune = false;
  bool count_only = false;
  std::uint64_t enumerate_limit = 100;
  std::string format = "json";
  std::string var_order = "topo";
};

StoreConfig store_config_from_env() {
  StoreConfig config;
  const char* limit = std::getenv("KPATHS_NODE_LIMIT");
  if (limit && *limit) {
    std::uint64_t value = 0;
    std::string_view text(limit);
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size())
      throw std::invalid_argument("KPATHS_NODE_LIMIT must be an unsigned integer");
    config.max_nodes = value;
  }
  return config;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string joined(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += "->";
    out += names[i];
  }
  return out;
}

void emit_report(const QueryArgs& args, std::optional<std::int64_t> threshold,
                 const std::string& path_count,
                 const std::string& db_path_count,
                 const std::vector<MaterializedPath>& paths,
                 const NodeStore& store, double wall_ms) {
  std::ostringstream memory;
  memory << "zbdd store holds " << store.node_count() << " nodes (~"
         << store.memory_bytes() << " bytes)";

  if (args.format == "tsv") {
    std::cout << "# mode=" << args.mode << " k=" << args.k
              << " kth=" << (args.kth ? "true" : "false")
              << " pruned=" << (args.prune ? "true" : "false")
              << " var_order=" << args.var_order << " threshold="
              << (threshold ? std::to_string(*threshold) : "none")
              << " path_count=" << path_count
              << " db_path_count=" << db_path_count
              << " zbdd_nodes=" << store.node_count() << " wall_time_ms="
              << wall_ms << " memory_note=\"" << memory.str() << "\"\n";
    for (const MaterializedPath& p : paths)
      std::cout << p.length << '\t' << joined(p.vertices) << '\n';
    return;
  }

  ordered_json report;
  report["mode"] = args.mode;
  report["k"] = args.k;
  report["kth"] = args.kth;
  report["pruned"] = args.prune;
  report["var_order"] = args.var_order;
  if (threshold)
    report["threshold"] = *threshold;
  else
    report["threshold"] = nullptr;
  report["path_count"] = path_count;
  report["db_path_count"] = db_path_count;
  report["zbdd_nodes"] = store.node_count();
  report["wall_time_ms"] = wall_ms;
  report["memory_note"] = memory.str();
  ordered_json list = ordered_json::array();
  for (const MaterializedPath& p : paths)
    list.push_back({{"length", p.length}, {"vertices", p.vertices}});
  report["paths"] = std::move(list);
  std::cout << report.dump(2) << '\n';
}

int run_query(const QueryArgs& args) {
  if (!args.k_given && !args.count_only)
    throw std::invalid_argument("--k is required unless --count-only is given");
  if (args.prune && !args.k_given)
    throw std::invalid_argument("--prune requires --k");
  if (args.kth && args.count_only)
    throw std::invalid_argument("--kth and --count-only are mutually exclusive");

  Mode mode = args.mode == "longest" ? Mode::kLongest : Mode::kShortest;

  NodeStore store(store_config_from_env());
  auto start = std::chrono::steady_clock::now();

  Dag dag = Dag::parse(read_file(args.input));
  BuildOptions options;
  options.var_order =
      args.var_order == "topo" ? VarOrder::kTopo : VarOrder::kReverse;
  if (args.prune) options.prune = PruneOptions{args.k, mode};
  PathDb db(store, dag, options);

  if (args.count_only) {
    std::cout << db.count_paths().str() << '\n';
    return kExitOk;
  }

  std::string db_count = db.count_paths().str();
  std::optional<std::int64_t> threshold;
  std::string result_count;
  std::vector<MaterializedPath> paths;

  if (args.kth) {
    Term term = mode == Mode::kLongest ? db.kth_longest(args.k)
                                       : db.kth_shortest(args.k);
    paths.push_back(db.materialize(term));
    result_count = "1";
  } else {
    QueryResult result = mode == Mode::kLongest ? db.top_k_longest(args.k)
                                                : db.top_k_shortest(args.k);
    threshold = result.threshold;
    result_count = result.count.str();
    paths = db.materialize(result, args.enumerate_limit);
  }

  auto stop = std::chrono::steady_clock::now();
  double wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();

  emit_report(args, threshold, result_count, db_count, paths, store, wall_ms);
  return kExitOk;
}

int run_selfcheck() {
  std::vector<CheckResult> results = run_selfchecks();
  std::size_t failures = 0;
  for (const CheckResult& r : results) {
    if (r.passed) {
      std::cout << "PASS " << r.name << '\n';
    } else {
      ++failures;
      std::cout << "FAIL " << r.name << ": " << r.detail << '\n';
    }
  }
  std::cout << results.size() << " checks, " << failures << " failures\n";
  return failures == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k longest/shortest path queries on weighted DAGs"};
  app.require_subcommand(1);

  QueryArgs query_args;
  CLI::App* query = app.add_subcommand(
      "query", "Build the path database for a graph and run one query");
  query->add_option("--input", query_args.input, "Edge-list graph file")
      ->required();
  query->add_option("--mode", query_args.mode, "Optimization sense")
      ->check(CLI::IsMember({"longest", "shortest"}))
      ->capture_default_str();
  query->add_option("--k", query_args.k, "How many paths to select")
      ->trigger_on_parse()
      ->each([&query_args](const std::string&) { query_args.k_given = true; });
  query->add_flag("--kth", query_args.kth,
                  "Return one k-th ranked path instead of the set");
  query->add_flag("--prune", query_args.prune,
                  "Prune partial path sets to the top K during the build");
  query->add_flag("--count-only", query_args.count_only,
                  "Print the exact path count and stop");
  query->add_option("--enumerate-limit", query_args.enumerate_limit,
                    "Maximum paths to expand in the report")
      ->capture_default_str();
  query->add_option("--format", query_args.format, "Report format")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->capture_default_str();
  query->add_option("--var-order", query_args.var_order,
                    "Variable order for the diagrams")
      ->check(CLI::IsMember({"topo", "reverse"}))
      ->capture_default_str();

  CLI::App* gen = app.add_subcommand("gen", "Generate a benchmark graph");
  gen->require_subcommand(1);

  RandomGraphSpec random_spec;
  CLI::App* gen_random =
      gen->add_subcommand("random", "Random DAG over a vertex ordering");
  gen_random->add_option("--vertices", random_spec.vertices, "Vertex count")
      ->required();
  gen_random
      ->add_option("--edge-prob", random_spec.edge_prob,
                   "Probability of each forward edge")
      ->required();
  gen_random->add_option("--wmin", random_spec.wmin, "Minimum edge weight")
      ->capture_default_str();
  gen_random->add_option("--wmax", random_spec.wmax, "Maximum edge weight")
      ->capture_default_str();
  gen_random->add_option("--seed", random_spec.seed, "PRNG seed")
      ->capture_default_str();

  LayeredGraphSpec layered_spec;
  CLI::App* gen_layered = gen->add_subcommand(
      "layered", "Complete bipartite stack of fixed-width layers");
  gen_layered->add_option("--layers", layered_spec.layers, "Layer count")
      ->required();
  gen_layered->add_option("--width", layered_spec.width, "Layer width")
      ->required();
  gen_layered->add_option("--wmin", layered_spec.wmin, "Minimum edge weight")
      ->capture_default_str();
  gen_layered->add_option("--wmax", layered_spec.wmax, "Maximum edge weight")
      ->capture_default_str();
  gen_layered->add_option("--seed", layered_spec.seed, "PRNG seed")
      ->capture_default_str();

  CLI::App* selfcheck =
      app.add_subcommand("selfcheck", "Run the built-in golden checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (query->parsed()) return run_query(query_args);
    if (gen_random->parsed()) {
      std::cout << generate_random(random_spec);
      return kExitOk;
    }
    if (gen_layered->parsed()) {
      std::cout << generate_layered(layered_spec);
      return kExitOk;
    }
    if (selfcheck->parsed()) return run_selfcheck();
  } catch (const NodeLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMemoryGuard;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const QueryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitQuery;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitValidation;
}
