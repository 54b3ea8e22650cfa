#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "comdet/engine.hpp"
#include "comdet/graph.hpp"
#include "comdet/partition.hpp"

namespace comdet {

struct LouvainConfig {
  std::uint64_t seed = 0;
  // Minimum improvement for a move to be taken and for another pass to be
  // worthwhile; guards against float-noise infinite loops.
  double min_gain = 1e-7;
  int max_passes = 20;
  int max_sweeps_per_pass = 100;
};

// One accepted relocation during local moving. `gain` is the modularity
// improvement over staying put, i.e. exactly the change in q.
struct MoveEvent {
  VertexId v;
  int from;
  int to;
  double gain;
};
using MoveObserver = std::function<void(const MoveEvent&)>;

// The result of alternating local moving and contraction. levels[i] is a
// compact partition of the i-th working graph (level 0 = the input);
// final_assignment composes them down to the original vertices.
struct Dendrogram {
  std::vector<Partition> levels;
  std::vector<double> q_per_level;
  std::vector<int> final_assignment;
  int num_communities = 0;
};

// One local-moving phase from singletons: sweeps vertices in seeded
// shuffle order (reshuffled every sweep), moving each to the neighbor
// community with the highest gain when that beats staying by more than
// min_gain; ties go to the smallest community id. Stops after a moveless
// sweep or max_sweeps_per_pass.
Partition local_moving(const GraphFrame& g, const LouvainConfig& cfg,
                       const MoveObserver& observer = {});

// Full algorithm: local moving, contraction, repeat, until a pass makes no
// move or improves q by at most min_gain. Edgeless graphs yield the
// singleton partition with q defined as 0. Verifies on exit that the
// flattened partition scores the same q on the input graph as the last
// level did on its working graph.
Dendrogram run_louvain(const GraphFrame& g, const LouvainConfig& cfg,
                       WorkerPool& pool, PhaseTimings* timings = nullptr,
                       const MoveObserver& observer = {});
Dendrogram run_louvain(const GraphFrame& g, const LouvainConfig& cfg);

}  // namespace comdet
