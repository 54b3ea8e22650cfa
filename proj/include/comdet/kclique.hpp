#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "comdet/engine.hpp"
#include "comdet/graph.hpp"

namespace comdet {

// All k-cliques of a graph, each a strictly increasing vertex tuple, listed
// in lexicographic order with no duplicates. The index maps every (k-1)-
// subset to the cliques containing it; two cliques are adjacent (percolate
// into one community) exactly when they share such a subset.
struct CliqueSet {
  int k = 3;
  std::vector<std::vector<VertexId>> cliques;
  std::map<std::vector<VertexId>, std::vector<int>> index;
};

// Unions of adjacency-connected k-cliques. A vertex may sit in any number
// of communities, including zero (when it is in no k-clique at all).
struct OverlappingCommunities {
  std::vector<std::vector<VertexId>> communities;  // sorted sets, canonical order
  std::vector<std::vector<int>> membership;        // vertex -> community ids
  std::size_t num_cliques = 0;
};

struct KCliqueOptions {
  int k = 3;
  // Enumeration throws CapacityError once it would emit more k-tuples than
  // this (counted before deduplication), instead of truncating.
  std::uint64_t max_cliques = 10'000'000;
};

// Pivoting maximal-clique search rooted per vertex, then expansion of each
// maximal clique into its k-subsets. Edge direction and weights are
// ignored; k < 2 is rejected. Deterministic for any worker count.
CliqueSet enumerate_kcliques(const GraphFrame& g, WorkerPool& pool,
                             const KCliqueOptions& opt = {});
CliqueSet enumerate_kcliques(const GraphFrame& g, int k);

// Union-find over the clique adjacency implied by the subset index.
OverlappingCommunities percolate(const GraphFrame& g, const CliqueSet& cs);

OverlappingCommunities run_kcliques(const GraphFrame& g, WorkerPool& pool,
                                    const KCliqueOptions& opt = {},
                                    PhaseTimings* timings = nullptr);
OverlappingCommunities run_kcliques(const GraphFrame& g, int k = 3);

}  // namespace comdet
