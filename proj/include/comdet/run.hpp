#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "comdet/engine.hpp"
#include "comdet/fastgreedy.hpp"
#include "comdet/graph.hpp"
#include "comdet/kclique.hpp"
#include "comdet/louvain.hpp"

namespace comdet {

enum class Algo { Louvain, FastGreedy, KCliques };

std::string algo_name(Algo algo);
std::optional<Algo> algo_from_name(const std::string& name);

struct DetectOptions {
  Algo algo = Algo::Louvain;
  std::uint64_t seed = 0;
  double min_gain = 1e-7;
  int k = 3;                               // kcliques only
  std::uint64_t max_cliques = 10'000'000;  // kcliques only
};

// One algorithm run, normalized to a common surface: exclusive community
// lists for the modularity algorithms, possibly-overlapping ones for clique
// percolation, plus the per-algorithm detail (dendrogram / merge trace).
struct DetectResult {
  Algo algo = Algo::Louvain;
  std::vector<std::vector<VertexId>> communities;
  std::size_t num_communities = 0;
  bool has_q = false;
  double q_final = 0.0;

  Dendrogram dendrogram;            // louvain
  MergeTrace trace;                 // fastgreedy
  OverlappingCommunities overlaps;  // kcliques
};

DetectResult detect(const GraphFrame& g, WorkerPool& pool,
                    const DetectOptions& opt, PhaseTimings* timings = nullptr);

// Everything one run reports: identity, knobs, per-phase seconds, outcome.
struct RunReport {
  std::string algo;
  std::string dataset;
  int workers = 1;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> params;
  PhaseTimings phases;
  bool has_q = false;
  double q_final = 0.0;
  std::size_t communities = 0;
  double wall_s = 0.0;
  double peak_rss_mb = 0.0;
};

// Runs `detect` under a wall clock and collects the report. The result
// itself lands in *result when given.
RunReport timed_run(const GraphFrame& g, const std::string& dataset,
                    const DetectOptions& opt, WorkerPool& pool,
                    DetectResult* result = nullptr);

std::string report_json(const RunReport& report);

}  // namespace comdet
