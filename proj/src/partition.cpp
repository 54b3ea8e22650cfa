#include "comdet/partition.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace comdet {

Partition Partition::singletons(const GraphFrame& g, const DegreeVector& deg) {
  std::vector<int> assignment(g.num_vertices());
  std::iota(assignment.begin(), assignment.end(), 0);
  return from_assignment(g, deg, std::move(assignment));
}

Partition Partition::from_assignment(const GraphFrame& g,
                                     const DegreeVector& deg,
                                     std::vector<int> assignment) {
  if (assignment.size() != static_cast<std::size_t>(g.num_vertices()))
    throw std::invalid_argument("assignment covers " +
                                std::to_string(assignment.size()) +
                                " vertices, graph has " +
                                std::to_string(g.num_vertices()));

  Partition p;
  p.assignment_ = std::move(assignment);

  int bound = 0;
  for (int c : p.assignment_) {
    if (c < 0) throw std::invalid_argument("community ids must be >= 0");
    bound = std::max(bound, c + 1);
  }
  p.sizes_.assign(bound, 0);
  for (int c : p.assignment_) ++p.sizes_[c];
  for (int s : p.sizes_)
    if (s > 0) ++p.num_communities_;

  const bool dir = g.directed();
  if (dir) {
    p.tot_in_.assign(bound, 0.0);
    p.tot_out_.assign(bound, 0.0);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      p.tot_in_[p.assignment_[v]] += deg.k_in[v];
      p.tot_out_[p.assignment_[v]] += deg.k_out[v];
    }
  } else {
    p.tot_.assign(bound, 0.0);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      p.tot_[p.assignment_[v]] += deg.k[v];
  }

  p.internal_.assign(bound, 0.0);
  const auto& et = g.edges();
  for (std::size_t i = 0; i < et.size(); ++i) {
    int cs = p.assignment_[et.src[i]];
    if (cs == p.assignment_[et.dst[i]]) p.internal_[cs] += et.weight[i];
  }
  return p;
}

std::vector<int> Partition::compact_map() const {
  std::vector<int> map(sizes_.size(), -1);
  int next = 0;
  for (std::size_t c = 0; c < sizes_.size(); ++c)
    if (sizes_[c] > 0) map[c] = next++;
  return map;
}

std::vector<std::vector<VertexId>> Partition::group(
    const std::vector<int>& assignment) {
  int bound = 0;
  for (int c : assignment) bound = std::max(bound, c + 1);
  std::vector<std::vector<VertexId>> out(bound);
  for (std::size_t v = 0; v < assignment.size(); ++v)
    out[assignment[v]].push_back(static_cast<VertexId>(v));
  return out;
}

Partition Partition::compacted(const GraphFrame& g,
                               const DegreeVector& deg) const {
  std::vector<int> map = compact_map();
  std::vector<int> assignment(assignment_.size());
  for (std::size_t v = 0; v < assignment_.size(); ++v)
    assignment[v] = map[assignment_[v]];
  return from_assignment(g, deg, std::move(assignment));
}

}  // namespace comdet
