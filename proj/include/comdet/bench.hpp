#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "comdet/graph.hpp"
#include "comdet/run.hpp"

namespace comdet {

// Scalability protocol: synthetic graphs at fixed (vertices, edges) scale
// factors, each algorithm timed at each worker count, `repetitions` runs
// per cell with the median reported.
struct BenchPlan {
  struct Scale {
    VertexId vertices = 0;
    std::int64_t edges = 0;
  };
  std::vector<Scale> ladder;
  std::vector<int> worker_counts = {1, 2, 4};
  std::vector<Algo> algorithms = {Algo::Louvain, Algo::FastGreedy,
                                  Algo::KCliques};
  int repetitions = 3;
  std::uint64_t seed = 0;
  Directedness directedness = Directedness::Undirected;
};

// The three scale factors of the reference protocol.
BenchPlan default_plan();

// JSON plan: {"ladder": [{"vertices": V, "edges": E}, ...],
// "workers": [...], "algorithms": [...], "repetitions": N, "seed": N,
// "directed": bool} — every key optional, defaults as above.
BenchPlan load_plan(const std::string& file);

struct BenchRow {
  std::int64_t edges = 0;
  VertexId vertices = 0;
  std::string algo;
  int workers = 0;
  double median_wall_s = 0.0;
  bool has_q = false;
  double q_final = 0.0;
  std::size_t communities = 0;
  std::string error;  // non-empty marks a failed cell; the bench continues
};

// Runs the whole plan. A failing cell is recorded and skipped, never fatal.
// Progress lines go to *progress when given.
std::vector<BenchRow> run_bench(const BenchPlan& plan,
                                std::ostream* progress = nullptr);

// Long-form CSV, one row per (scale, algo, workers) cell.
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace comdet
