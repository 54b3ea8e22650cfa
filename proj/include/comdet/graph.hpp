#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "comdet/engine.hpp"

namespace comdet {

using VertexId = std::int32_t;

enum class Directedness { Undirected, Directed };

// Vertex table: dense ids [0, |V|) with an optional opaque label each.
// Labels, when present, are unique.
struct VertexTable {
  std::vector<std::string> labels;
  std::unordered_map<std::string, VertexId> by_label;

  VertexId size() const { return static_cast<VertexId>(labels.size()); }
  // Returns the id for `label`, creating it on first occurrence.
  VertexId intern(std::string_view label);
  // -1 when unknown.
  VertexId find(std::string_view label) const;
};

// Edge table: one row per distinct edge, weights strictly positive.
// Undirected graphs store each edge once with src <= dst.
struct EdgeTable {
  std::vector<VertexId> src;
  std::vector<VertexId> dst;
  std::vector<double> weight;

  std::size_t size() const { return src.size(); }
  void push(VertexId s, VertexId d, double w) {
    src.push_back(s);
    dst.push_back(d);
    weight.push_back(w);
  }
  bool operator==(const EdgeTable&) const = default;
};

struct NeighborList {
  std::span<const VertexId> ids;
  std::span<const double> weights;
  std::size_t size() const { return ids.size(); }
};

// The columnar graph: a vertex table plus an edge table, with a CSR-style
// adjacency index built once at construction. Immutable afterwards and
// safe to share across workers.
class GraphFrame {
 public:
  // `num_partitions` <= 0 means "decide at use time from the worker count".
  GraphFrame(VertexTable vertices, EdgeTable edges, Directedness directedness,
             int num_partitions = 0);

  const VertexTable& vertices() const { return vertices_; }
  const EdgeTable& edges() const { return edges_; }
  Directedness directedness() const { return directedness_; }
  bool directed() const { return directedness_ == Directedness::Directed; }
  VertexId num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  int num_partitions() const { return num_partitions_; }
  int effective_partitions(const WorkerPool& pool) const {
    return num_partitions_ > 0 ? num_partitions_ : pool.num_workers();
  }

  // Total edge weight m: the sum of stored per-edge weights. For undirected
  // graphs each edge is stored once, self-loops included once.
  double total_weight() const { return total_weight_; }

  // Undirected: the symmetric neighborhood (self-loop listed once).
  // Directed: out-neighbors; use in_neighbors for the other side.
  NeighborList neighbors(VertexId v) const;
  NeighborList out_neighbors(VertexId v) const { return neighbors(v); }
  NeighborList in_neighbors(VertexId v) const;

  const std::string& label(VertexId v) const { return vertices_.labels[v]; }

 private:
  void build_index();
  void check_vertex(VertexId v) const;

  VertexTable vertices_;
  EdgeTable edges_;
  Directedness directedness_;
  int num_partitions_;
  double total_weight_ = 0.0;

  // CSR adjacency. Undirected graphs use only the out_* arrays (symmetric
  // view); directed graphs fill both orientations.
  std::vector<std::size_t> out_offsets_;
  std::vector<VertexId> out_ids_;
  std::vector<double> out_weights_;
  std::vector<std::size_t> in_offsets_;
  std::vector<VertexId> in_ids_;
  std::vector<double> in_weights_;
};

// Weighted degrees. Undirected graphs fill `k` (a self-loop of weight w
// contributes 2w); directed graphs fill `k_in`/`k_out` (a self-loop
// contributes w to each).
struct DegreeVector {
  Directedness directedness = Directedness::Undirected;
  std::vector<double> k;
  std::vector<double> k_in;
  std::vector<double> k_out;
};

struct EdgeSpec {
  std::string src;
  std::string dst;
  double weight = 1.0;
};

// Builds a graph from labeled edges. Dense ids are assigned in first
// occurrence order (declared vertices first, then edge endpoints), parallel
// edges are summed, and undirected edges are canonicalized to src <= dst.
// Throws InputError on a non-positive weight, naming the offending row.
GraphFrame build_graph(const std::vector<std::string>& vertices,
                       const std::vector<EdgeSpec>& edges,
                       Directedness directedness, int num_partitions = 0);

// Same, but on pre-assigned dense ids covering [0, num_vertices).
// Vertices get their decimal id as label.
GraphFrame build_graph_from_ids(
    VertexId num_vertices,
    const std::vector<std::tuple<VertexId, VertexId, double>>& edges,
    Directedness directedness, int num_partitions = 0);

class Partition;  // modularity.hpp

// Weighted degree computation, a parallel reduction over edge partitions.
DegreeVector degrees(const GraphFrame& g, WorkerPool& pool);
DegreeVector degrees(const GraphFrame& g);  // single-threaded

// Community contraction: one super-node per non-empty community,
// inter-community weights summed, intra-community weight folded into a
// self-loop. Total weight is conserved. Super-node ids follow the
// partition's compacted community ids and are labeled by their decimal id.
GraphFrame contract(const GraphFrame& g, const Partition& part,
                    WorkerPool& pool);
GraphFrame contract(const GraphFrame& g, const Partition& part);

}  // namespace comdet
