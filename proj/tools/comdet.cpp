#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "comdet/bench.hpp"
#include "comdet/engine.hpp"
#include "comdet/error.hpp"
#include "comdet/graph.hpp"
#include "comdet/ingest.hpp"
#include "comdet/io.hpp"
#include "comdet/modularity.hpp"
#include "comdet/run.hpp"

namespace {

using namespace comdet;
namespace fs = std::filesystem;

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  out << text;
  out.flush();
  if (!out) throw InputError("cannot write " + file.string());
}

// report.json is keyed by the last path component of the graph directory.
std::string dataset_name(const fs::path& dir) {
  fs::path p = dir;
  if (p.filename().empty()) p = p.parent_path();
  std::string name = p.filename().string();
  return name.empty() ? dir.string() : name;
}

struct IngestArgs {
  std::string format;
  std::string in;
  std::string out;
  TweetFieldPaths paths;
};

int cmd_ingest(const IngestArgs& args) {
  GraphFrame g = [&] {
    if (args.format == "tweets-json") {
      TweetParse parsed = load_tweets(args.in, args.paths);
      if (parsed.skipped > 0)
        std::cerr << "warning: skipped " << parsed.skipped
                  << " malformed line(s)\n";
      return retweet_graph(parsed.records);
    }
    if (args.format == "collab-csv")
      return collaboration_graph(load_authorships_csv(args.in));
    return load_edgelist_tsv(args.in, Directedness::Undirected);
  }();
  if (g.num_edges() == 0)
    std::cerr << "warning: the corpus produced no edges; writing an "
                 "edgeless graph\n";
  save_graph(g, args.out);
  std::cout << "vertices=" << g.num_vertices() << " edges=" << g.num_edges()
            << " total_weight=" << format_double(g.total_weight()) << "\n";
  return 0;
}

struct DetectArgs {
  std::string graph;
  std::string out;
  std::string trace;
  DetectOptions opt;
  int workers = 0;
  bool directed = false;
};

int cmd_detect(const DetectArgs& args) {
  WorkerPool pool(args.workers);
  GraphFrame g = load_graph(args.graph);
  if (args.directed && !g.directed())
    throw InputError("--directed: the graph at " + args.graph +
                     " is undirected");
  if (args.opt.algo == Algo::KCliques && g.directed())
    std::cerr << "warning: clique percolation ignores edge direction; "
                 "treating the graph as undirected\n";

  DetectResult result;
  RunReport report =
      timed_run(g, dataset_name(args.graph), args.opt, pool, &result);

  fs::create_directories(args.out);
  save_communities_csv(fs::path(args.out) / "communities.csv", g,
                       result.communities);

  auto doc = nlohmann::json::parse(report_json(report));
  if (args.opt.algo == Algo::Louvain)
    doc["levels"] = result.dendrogram.q_per_level;
  if (args.opt.algo == Algo::FastGreedy) {
    auto steps = nlohmann::json::array();
    int step = 0;
    for (const auto& s : result.trace.steps)
      steps.push_back({{"step", ++step},
                       {"i", s.absorbed},
                       {"j", s.survivor},
                       {"deltaQ", s.delta_q},
                       {"Q", s.q_after}});
    doc["merge_trace"] = std::move(steps);
  }
  write_text(fs::path(args.out) / "report.json", doc.dump(2) + "\n");

  if (!args.trace.empty()) {
    std::string csv = "step,i,j,deltaQ,Q\n";
    int step = 0;
    for (const auto& s : result.trace.steps)
      csv += std::to_string(++step) + "," + std::to_string(s.absorbed) + "," +
             std::to_string(s.survivor) + "," + format_double(s.delta_q) +
             "," + format_double(s.q_after) + "\n";
    write_text(args.trace, csv);
  }

  std::cout << report.algo << ": " << report.communities << " communities";
  if (report.has_q) std::cout << ", q = " << format_double(report.q_final);
  std::cout << " (" << format_double(report.wall_s) << "s)\n";
  return 0;
}

int cmd_modularity(const std::string& graph, const std::string& partition,
                   bool directed) {
  GraphFrame g = load_graph(graph);
  if (directed && !g.directed())
    throw InputError("--directed: the graph at " + graph + " is undirected");
  std::vector<int> assignment = load_partition_csv(partition, g);
  Partition p = Partition::from_assignment(g, degrees(g), std::move(assignment));
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", modularity(g, p));
  std::cout << buf << "\n";
  return 0;
}

int cmd_bench(const std::string& plan_file, const std::string& out,
              const std::vector<int>& workers_list) {
  BenchPlan plan = plan_file.empty() ? default_plan() : load_plan(plan_file);
  if (!workers_list.empty()) plan.worker_counts = workers_list;
  auto rows = run_bench(plan, &std::cerr);
  write_text(out, bench_csv(rows));
  std::size_t failed = 0;
  for (const auto& row : rows) failed += row.error.empty() ? 0 : 1;
  std::cout << rows.size() << " cells -> " << out;
  if (failed > 0) std::cout << " (" << failed << " failed)";
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"community detection over columnar edge-frame graphs"};
  app.require_subcommand(1);
  const int max_int = std::numeric_limits<int>::max();

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "build a graph from raw records");
  ingest->add_option("--format", ingest_args.format, "input format")
      ->required()
      ->check(CLI::IsMember({"tweets-json", "collab-csv", "edgelist-tsv"}));
  ingest->add_option("--in", ingest_args.in, "input file")->required();
  ingest->add_option("--out", ingest_args.out, "output graph directory")
      ->required();
  ingest->add_option("--user-path", ingest_args.paths.user_path,
                     "dot path of the author id in a tweet object");
  ingest->add_option("--retweet-path", ingest_args.paths.retweet_path,
                     "dot path of the retweeted author id");

  DetectArgs detect_args;
  std::string algo_name_arg;
  auto* detect = app.add_subcommand("detect", "run a community detection algorithm");
  detect->add_option("--graph", detect_args.graph, "graph directory")
      ->required();
  detect->add_option("--algo", algo_name_arg, "algorithm")
      ->required()
      ->check(CLI::IsMember({"louvain", "fastgreedy", "kcliques"}));
  detect->add_option("--seed", detect_args.opt.seed, "rng seed (louvain)");
  detect
      ->add_option("--min-gain", detect_args.opt.min_gain,
                   "louvain per-pass improvement threshold")
      ->check(CLI::NonNegativeNumber);
  detect->add_option("--k", detect_args.opt.k, "clique size (kcliques)")
      ->check(CLI::Range(2, max_int));
  detect->add_flag("--directed", detect_args.directed,
                   "require directed-graph scoring");
  detect
      ->add_option("--workers", detect_args.workers, "worker pool size")
      ->default_val(WorkerPool::hardware_workers())
      ->check(CLI::Range(1, max_int));
  detect->add_option("--out", detect_args.out, "output directory")->required();
  detect->add_option("--trace", detect_args.trace,
                     "write the merge trace CSV here (fastgreedy only)");

  std::string mod_graph, mod_partition;
  bool mod_directed = false;
  auto* mod = app.add_subcommand("modularity", "score a partition");
  mod->add_option("--graph", mod_graph, "graph directory")->required();
  mod->add_option("--partition", mod_partition, "membership CSV")->required();
  mod->add_flag("--directed", mod_directed, "require directed-graph scoring");

  std::string bench_plan, bench_out;
  std::vector<int> bench_workers;
  auto* bench = app.add_subcommand("bench", "time algorithms on synthetic scale rungs");
  bench->add_option("--plan", bench_plan, "JSON plan (defaults when omitted)");
  bench->add_option("--out", bench_out, "output CSV file")->required();
  bench
      ->add_option("--workers-list", bench_workers,
                   "comma-separated worker counts overriding the plan")
      ->delimiter(',')
      ->check(CLI::Range(1, max_int));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*ingest) return cmd_ingest(ingest_args);
    if (*detect) {
      detect_args.opt.algo = *algo_from_name(algo_name_arg);
      if (!detect_args.trace.empty() &&
          detect_args.opt.algo != Algo::FastGreedy) {
        std::cerr << "error: --trace needs --algo fastgreedy\n";
        return 1;
      }
      return cmd_detect(detect_args);
    }
    if (*mod) return cmd_modularity(mod_graph, mod_partition, mod_directed);
    if (*bench) return cmd_bench(bench_plan, bench_out, bench_workers);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
