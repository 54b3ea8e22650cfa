#pragma once

#include "comdet/graph.hpp"
#include "comdet/partition.hpp"

namespace comdet {

using ModularityScore = double;

// Newman modularity of an undirected weighted graph, evaluated in the
// community-aggregated form
//   Q = sum_C [ w_in(C)/m - (sum_C k)^2 / (4 m^2) ]
// where w_in(C) counts each intra-community stored edge once (self-loops
// included once) and k is the weighted degree (self-loops twice).
// Recomputes everything from the assignment; the partition caches are not
// trusted here, so this doubles as the reference for incremental states.
// Rejects directed graphs and m == 0.
ModularityScore modularity_undirected(const GraphFrame& g, const Partition& p);

// Directed modularity
//   Q_d = sum_C [ w_in(C)/m - tot_in(C) * tot_out(C) / m^2 ]
// with m the total edge weight. Rejects undirected graphs and m == 0.
ModularityScore modularity_directed(const GraphFrame& g, const Partition& p);

// Dispatches on the graph's directedness.
ModularityScore modularity(const GraphFrame& g, const Partition& p);

// Modularity gain of placing vertex v into community C, with v treated as
// removed from its current community first. k_v_C is the total weight of
// edges between v and members of C (both directions for digraphs), and the
// community totals exclude v.
inline double gain_terms_undirected(double k_v_C, double k_v, double tot_C,
                                    double m) {
  return k_v_C / m - k_v * tot_C / (2.0 * m * m);
}
inline double gain_terms_directed(double k_v_C, double k_v_in, double k_v_out,
                                  double tot_in_C, double tot_out_C,
                                  double m) {
  return k_v_C / m - (k_v_out * tot_in_C + k_v_in * tot_out_C) / (m * m);
}

// Reference gain evaluations on top of a Partition snapshot. `community`
// may be any id < p.id_bound(), including v's own or an empty one.
double gain_undirected(const GraphFrame& g, const DegreeVector& deg,
                       const Partition& p, VertexId v, int community);
double gain_directed(const GraphFrame& g, const DegreeVector& deg,
                     const Partition& p, VertexId v, int community);
double gain(const GraphFrame& g, const DegreeVector& deg, const Partition& p,
            VertexId v, int community);

}  // namespace comdet
