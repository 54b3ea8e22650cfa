#pragma once

#include <vector>

#include "comdet/graph.hpp"

namespace comdet {

// A community assignment over a fixed graph, with cached per-community
// weight sums kept consistent with the assignment:
//   - totals:  sum of member degrees (undirected), or in/out sums (directed)
//   - internal_weight: sum of intra-community edge weights, self-loops
//     counted once
// A Partition is a snapshot; algorithms keep their own mutable state and
// materialize one of these when done.
class Partition {
 public:
  Partition() = default;

  static Partition singletons(const GraphFrame& g, const DegreeVector& deg);
  // `assignment` must cover every vertex with a community id >= 0.
  static Partition from_assignment(const GraphFrame& g,
                                   const DegreeVector& deg,
                                   std::vector<int> assignment);

  const std::vector<int>& assignment() const { return assignment_; }
  int community_of(VertexId v) const { return assignment_[v]; }
  // Number of distinct ids in use; empty ids may exist until compaction.
  int id_bound() const { return static_cast<int>(sizes_.size()); }
  int num_communities() const { return num_communities_; }
  bool is_compact() const { return num_communities_ == id_bound(); }

  const std::vector<int>& community_sizes() const { return sizes_; }
  const std::vector<double>& totals() const { return tot_; }
  const std::vector<double>& totals_in() const { return tot_in_; }
  const std::vector<double>& totals_out() const { return tot_out_; }
  const std::vector<double>& internal_weight() const { return internal_; }

  // Maps each non-empty community id to a dense index in ascending id
  // order; empty ids map to -1.
  std::vector<int> compact_map() const;
  Partition compacted(const GraphFrame& g, const DegreeVector& deg) const;

  bool operator==(const Partition& other) const {
    return assignment_ == other.assignment_;
  }

  // Per-community member lists (members ascending), indexed by community
  // id; empty ids yield empty lists.
  static std::vector<std::vector<VertexId>> group(
      const std::vector<int>& assignment);

 private:
  std::vector<int> assignment_;
  std::vector<int> sizes_;
  std::vector<double> tot_;
  std::vector<double> tot_in_;
  std::vector<double> tot_out_;
  std::vector<double> internal_;
  int num_communities_ = 0;
};

}  // namespace comdet
