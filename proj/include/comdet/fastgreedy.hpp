#pragma once

#include <cstdint>
#include <queue>
#include <unordered_map>
#include <vector>

#include "comdet/engine.hpp"
#include "comdet/graph.hpp"
#include "comdet/partition.hpp"

namespace comdet {

// One agglomeration: community `absorbed` folded into community `survivor`
// (ids are initial vertex ids). q_after is the running modularity, i.e.
// q_initial plus the delta_q values so far.
struct MergeStep {
  int absorbed;
  int survivor;
  double delta_q;
  double q_after;
};

struct MergeTrace {
  double q_initial = 0.0;
  std::vector<MergeStep> steps;
  // Number of leading merges in the best prefix; 0 means the untouched
  // singleton state. Ties go to the earliest cut.
  std::size_t best_cut = 0;
  double best_q = 0.0;
  Partition best_partition;
};

// Sparse pair-merge gain matrix over communities, with per-row max-heaps
// and a global heap of row bests. Heaps use lazy deletion: row entries are
// validated against the stored value, global entries against a per-row
// version stamp bumped on every row change.
class DeltaQMatrix {
 public:
  // Singleton-community state: one entry per connected community pair,
  // valued at the exact modularity change of merging the two.
  DeltaQMatrix(const GraphFrame& g, const DegreeVector& deg);

  bool directed() const { return directed_; }
  int size() const { return static_cast<int>(rows_.size()); }
  int num_alive() const { return num_alive_; }
  bool alive(int c) const { return alive_[c]; }
  const std::unordered_map<int, double>& row(int c) const { return rows_[c]; }
  // Degree fractions: sum over alive communities is 1 (undirected) or
  // 1 for each direction (directed).
  double a(int c) const { return a_[c]; }
  double a_in(int c) const { return a_in_[c]; }
  double a_out(int c) const { return a_out_[c]; }
  double q_current() const { return q_current_; }

  // Applies the single best merge (largest gain; ties to the smallest
  // (row, neighbor) pair) and appends it to the trace. False when no
  // mergeable pair remains (then communities are final). Throws
  // std::invalid_argument when fewer than two communities are alive.
  bool merge_one(MergeTrace& trace);

 private:
  struct RowEntry {
    double v;
    int j;
  };
  struct RowCmp {
    bool operator()(const RowEntry& a, const RowEntry& b) const {
      if (a.v != b.v) return a.v < b.v;
      return a.j > b.j;
    }
  };
  struct GlobalEntry {
    double v;
    int i;
    int j;
    std::uint64_t ver;
  };
  struct GlobalCmp {
    bool operator()(const GlobalEntry& a, const GlobalEntry& b) const {
      if (a.v != b.v) return a.v < b.v;
      if (a.i != b.i) return a.i > b.i;
      return a.j > b.j;
    }
  };
  using RowHeap = std::priority_queue<RowEntry, std::vector<RowEntry>, RowCmp>;

  double pair_correction(int x, int q) const {
    return directed_ ? a_in_[x] * a_out_[q] + a_out_[x] * a_in_[q]
                     : 2.0 * a_[x] * a_[q];
  }
  void set_pair(int x, int q, double v);
  void refresh_row(int c);  // bump version and repost the row's best

  bool directed_ = false;
  int num_alive_ = 0;
  double q_current_ = 0.0;
  std::vector<std::unordered_map<int, double>> rows_;
  std::vector<RowHeap> row_heaps_;
  std::vector<std::uint64_t> versions_;
  std::priority_queue<GlobalEntry, std::vector<GlobalEntry>, GlobalCmp> global_;
  std::vector<double> a_, a_in_, a_out_;
  std::vector<char> alive_;
};

DeltaQMatrix init_deltaq(const GraphFrame& g, const DegreeVector& deg);
DeltaQMatrix init_deltaq(const GraphFrame& g);

bool merge_step(DeltaQMatrix& state, MergeTrace& trace);

// Full agglomeration from singletons to exhaustion, then the trace is cut
// where the running modularity peaked. Edgeless graphs yield an empty
// trace over the singleton partition.
MergeTrace run_fastgreedy(const GraphFrame& g, WorkerPool& pool,
                          PhaseTimings* timings = nullptr);
MergeTrace run_fastgreedy(const GraphFrame& g);

}  // namespace comdet
