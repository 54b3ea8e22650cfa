#include "comdet/run.hpp"

#include <chrono>
#include <utility>

#include <json.hpp>

#include "comdet/io.hpp"
#include "comdet/modularity.hpp"
#include "comdet/partition.hpp"

namespace comdet {

using nlohmann::json;

std::string algo_name(Algo algo) {
  switch (algo) {
    case Algo::Louvain:
      return "louvain";
    case Algo::FastGreedy:
      return "fastgreedy";
    case Algo::KCliques:
      return "kcliques";
  }
  return "unknown";
}

std::optional<Algo> algo_from_name(const std::string& name) {
  if (name == "louvain") return Algo::Louvain;
  if (name == "fastgreedy") return Algo::FastGreedy;
  if (name == "kcliques") return Algo::KCliques;
  return std::nullopt;
}

DetectResult detect(const GraphFrame& g, WorkerPool& pool,
                    const DetectOptions& opt, PhaseTimings* timings) {
  DetectResult out;
  out.algo = opt.algo;
  switch (opt.algo) {
    case Algo::Louvain: {
      LouvainConfig cfg;
      cfg.seed = opt.seed;
      cfg.min_gain = opt.min_gain;
      out.dendrogram = run_louvain(g, cfg, pool, timings);
      PhaseClock clock(timings, "finalize");
      out.communities = Partition::group(out.dendrogram.final_assignment);
      out.num_communities = out.dendrogram.num_communities;
      out.has_q = true;
      out.q_final = out.dendrogram.q_per_level.back();
      break;
    }
    case Algo::FastGreedy: {
      out.trace = run_fastgreedy(g, pool, timings);
      PhaseClock clock(timings, "finalize");
      out.communities = Partition::group(out.trace.best_partition.assignment());
      out.num_communities = out.trace.best_partition.num_communities();
      out.has_q = true;
      out.q_final = out.trace.best_q;
      break;
    }
    case Algo::KCliques: {
      KCliqueOptions kopt;
      kopt.k = opt.k;
      kopt.max_cliques = opt.max_cliques;
      out.overlaps = run_kcliques(g, pool, kopt, timings);
      PhaseClock clock(timings, "finalize");
      out.communities = out.overlaps.communities;
      out.num_communities = out.overlaps.communities.size();
      out.has_q = false;
      break;
    }
  }
  return out;
}

RunReport timed_run(const GraphFrame& g, const std::string& dataset,
                    const DetectOptions& opt, WorkerPool& pool,
                    DetectResult* result) {
  RunReport report;
  report.algo = algo_name(opt.algo);
  report.dataset = dataset;
  report.workers = pool.num_workers();
  report.seed = opt.seed;
  switch (opt.algo) {
    case Algo::Louvain:
      report.params["min_gain"] = format_double(opt.min_gain);
      break;
    case Algo::FastGreedy:
      if (g.directed()) report.params["deltaq_normalization"] = "m^2";
      break;
    case Algo::KCliques:
      report.params["k"] = std::to_string(opt.k);
      report.params["max_cliques"] = std::to_string(opt.max_cliques);
      break;
  }

  auto start = std::chrono::steady_clock::now();
  DetectResult r = detect(g, pool, opt, &report.phases);
  report.wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  report.has_q = r.has_q;
  report.q_final = r.q_final;
  report.communities = r.num_communities;
  report.peak_rss_mb = peak_rss_mb();
  if (result) *result = std::move(r);
  return report;
}

std::string report_json(const RunReport& report) {
  json doc;
  doc["algo"] = report.algo;
  doc["dataset"] = report.dataset;
  doc["workers"] = report.workers;
  doc["seed"] = report.seed;
  doc["params"] = json::object();
  for (const auto& [key, value] : report.params) doc["params"][key] = value;
  doc["phases"] = json::object();
  for (const auto& [name, seconds] : report.phases.entries())
    doc["phases"][name] = seconds;
  if (report.has_q)
    doc["q_final"] = report.q_final;
  else
    doc["q_final"] = nullptr;
  doc["communities"] = report.communities;
  doc["wall_s"] = report.wall_s;
  doc["peak_rss_mb"] = report.peak_rss_mb;
  return doc.dump(2) + "\n";
}

}  // namespace comdet
