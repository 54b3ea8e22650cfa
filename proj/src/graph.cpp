#include "comdet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "comdet/error.hpp"
#include "comdet/partition.hpp"

namespace comdet {

VertexId VertexTable::intern(std::string_view label) {
  auto it = by_label.find(std::string(label));
  if (it != by_label.end()) return it->second;
  VertexId id = size();
  labels.emplace_back(label);
  by_label.emplace(labels.back(), id);
  return id;
}

VertexId VertexTable::find(std::string_view label) const {
  auto it = by_label.find(std::string(label));
  return it == by_label.end() ? VertexId{-1} : it->second;
}

GraphFrame::GraphFrame(VertexTable vertices, EdgeTable edges,
                       Directedness directedness, int num_partitions)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      directedness_(directedness),
      num_partitions_(num_partitions) {
  const VertexId n = vertices_.size();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    VertexId s = edges_.src[i], d = edges_.dst[i];
    if (s < 0 || s >= n || d < 0 || d >= n)
      throw std::invalid_argument("edge row " + std::to_string(i) +
                                  ": endpoint out of range");
    double w = edges_.weight[i];
    if (!(w > 0.0) || !std::isfinite(w))
      throw InputError("edge row " + std::to_string(i) +
                       ": weight must be positive and finite");
    if (!directed() && s > d)
      throw std::invalid_argument("edge row " + std::to_string(i) +
                                  ": undirected edges must satisfy src <= dst");
    total_weight_ += w;
  }
  build_index();
}

void GraphFrame::build_index() {
  const VertexId n = num_vertices();
  const std::size_t e = num_edges();

  auto fill = [n](std::vector<std::size_t>& offsets, std::vector<VertexId>& ids,
                  std::vector<double>& weights, auto&& for_each_slot) {
    offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for_each_slot([&](VertexId row, VertexId, double) { ++offsets[row + 1]; });
    for (VertexId v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    ids.resize(offsets[n]);
    weights.resize(offsets[n]);
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for_each_slot([&](VertexId row, VertexId nbr, double w) {
      std::size_t slot = cursor[row]++;
      ids[slot] = nbr;
      weights[slot] = w;
    });
    // Sort each adjacency row by neighbor id; rows are duplicate-free
    // because parallel edges are pre-summed.
    std::vector<std::pair<VertexId, double>> scratch;
    for (VertexId v = 0; v < n; ++v) {
      std::size_t lo = offsets[v], hi = offsets[v + 1];
      if (hi - lo < 2) continue;
      scratch.clear();
      for (std::size_t s = lo; s < hi; ++s) scratch.emplace_back(ids[s], weights[s]);
      std::sort(scratch.begin(), scratch.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t s = lo; s < hi; ++s) {
        ids[s] = scratch[s - lo].first;
        weights[s] = scratch[s - lo].second;
        if (s > lo && ids[s] == ids[s - 1])
          throw std::invalid_argument("duplicate edge between vertices " +
                                      std::to_string(v) + " and " +
                                      std::to_string(ids[s]));
      }
    }
  };

  if (!directed()) {
    fill(out_offsets_, out_ids_, out_weights_, [&](auto&& slot) {
      for (std::size_t i = 0; i < e; ++i) {
        slot(edges_.src[i], edges_.dst[i], edges_.weight[i]);
        if (edges_.src[i] != edges_.dst[i])
          slot(edges_.dst[i], edges_.src[i], edges_.weight[i]);
      }
    });
  } else {
    fill(out_offsets_, out_ids_, out_weights_, [&](auto&& slot) {
      for (std::size_t i = 0; i < e; ++i)
        slot(edges_.src[i], edges_.dst[i], edges_.weight[i]);
    });
    fill(in_offsets_, in_ids_, in_weights_, [&](auto&& slot) {
      for (std::size_t i = 0; i < e; ++i)
        slot(edges_.dst[i], edges_.src[i], edges_.weight[i]);
    });
  }
}

void GraphFrame::check_vertex(VertexId v) const {
  if (v < 0 || v >= num_vertices())
    throw std::invalid_argument("vertex id " + std::to_string(v) +
                                " out of range");
}

NeighborList GraphFrame::neighbors(VertexId v) const {
  check_vertex(v);
  std::size_t lo = out_offsets_[v], hi = out_offsets_[v + 1];
  return {std::span(out_ids_).subspan(lo, hi - lo),
          std::span(out_weights_).subspan(lo, hi - lo)};
}

NeighborList GraphFrame::in_neighbors(VertexId v) const {
  if (!directed()) return neighbors(v);
  check_vertex(v);
  std::size_t lo = in_offsets_[v], hi = in_offsets_[v + 1];
  return {std::span(in_ids_).subspan(lo, hi - lo),
          std::span(in_weights_).subspan(lo, hi - lo)};
}

namespace {

// Sorts rows by (src, dst) and sums consecutive duplicates, in row order,
// so the result does not depend on the input's duplicate layout.
EdgeTable normalize_edges(std::vector<std::tuple<VertexId, VertexId, double>>&& rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) {
                     return std::get<0>(a) != std::get<0>(b)
                                ? std::get<0>(a) < std::get<0>(b)
                                : std::get<1>(a) < std::get<1>(b);
                   });
  EdgeTable out;
  for (std::size_t i = 0; i < rows.size();) {
    auto [s, d, w] = rows[i];
    std::size_t j = i + 1;
    for (; j < rows.size() && std::get<0>(rows[j]) == s && std::get<1>(rows[j]) == d; ++j)
      w += std::get<2>(rows[j]);
    out.push(s, d, w);
    i = j;
  }
  return out;
}

}  // namespace

GraphFrame build_graph(const std::vector<std::string>& vertices,
                       const std::vector<EdgeSpec>& edges,
                       Directedness directedness, int num_partitions) {
  VertexTable vt;
  for (const auto& label : vertices) {
    if (label.empty()) throw InputError("vertex label must be non-empty");
    vt.intern(label);
  }
  std::vector<std::tuple<VertexId, VertexId, double>> rows;
  rows.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.src.empty() || e.dst.empty())
      throw InputError("edge row " + std::to_string(i) +
                       ": endpoint label must be non-empty");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw InputError("edge row " + std::to_string(i) +
                       ": weight must be positive and finite");
    VertexId s = vt.intern(e.src);
    VertexId d = vt.intern(e.dst);
    if (directedness == Directedness::Undirected && s > d) std::swap(s, d);
    rows.emplace_back(s, d, e.weight);
  }
  return GraphFrame(std::move(vt), normalize_edges(std::move(rows)),
                    directedness, num_partitions);
}

GraphFrame build_graph_from_ids(
    VertexId num_vertices,
    const std::vector<std::tuple<VertexId, VertexId, double>>& edges,
    Directedness directedness, int num_partitions) {
  VertexTable vt;
  vt.labels.reserve(num_vertices);
  for (VertexId v = 0; v < num_vertices; ++v) vt.intern(std::to_string(v));
  std::vector<std::tuple<VertexId, VertexId, double>> rows;
  rows.reserve(edges.size());
  for (auto [s, d, w] : edges) {
    if (directedness == Directedness::Undirected && s > d) std::swap(s, d);
    rows.emplace_back(s, d, w);
  }
  return GraphFrame(std::move(vt), normalize_edges(std::move(rows)),
                    directedness, num_partitions);
}

namespace {

struct DegreePartial {
  std::vector<double> a;
  std::vector<double> b;  // directed: a = in, b = out
};

}  // namespace

DegreeVector degrees(const GraphFrame& g, WorkerPool& pool) {
  const std::size_t n = static_cast<std::size_t>(g.num_vertices());
  const auto& et = g.edges();
  const bool dir = g.directed();

  auto map = [&](std::size_t begin, std::size_t end) {
    DegreePartial part;
    part.a.assign(n, 0.0);
    if (dir) part.b.assign(n, 0.0);
    for (std::size_t i = begin; i < end; ++i) {
      VertexId s = et.src[i], d = et.dst[i];
      double w = et.weight[i];
      if (dir) {
        part.a[d] += w;
        part.b[s] += w;
      } else {
        part.a[s] += w;
        part.a[d] += w;  // self-loop lands here twice on purpose
      }
    }
    return part;
  };
  auto reduce = [&](DegreePartial acc, DegreePartial part) {
    if (acc.a.empty()) return part;
    if (part.a.empty()) return acc;
    for (std::size_t v = 0; v < n; ++v) acc.a[v] += part.a[v];
    if (dir)
      for (std::size_t v = 0; v < n; ++v) acc.b[v] += part.b[v];
    return acc;
  };

  DegreePartial total = parallel_map_reduce(
      pool, et.size(), g.effective_partitions(pool), map, reduce, DegreePartial{});
  if (total.a.empty()) {
    total.a.assign(n, 0.0);
    if (dir) total.b.assign(n, 0.0);
  }

  DegreeVector dv;
  dv.directedness = g.directedness();
  if (dir) {
    dv.k_in = std::move(total.a);
    dv.k_out = std::move(total.b);
  } else {
    dv.k = std::move(total.a);
  }
  return dv;
}

DegreeVector degrees(const GraphFrame& g) {
  WorkerPool pool(1);
  return degrees(g, pool);
}

GraphFrame contract(const GraphFrame& g, const Partition& part,
                    WorkerPool& pool) {
  if (part.assignment().size() != static_cast<std::size_t>(g.num_vertices()))
    throw std::invalid_argument(
        "partition does not assign every vertex of the graph");

  std::vector<int> remap = part.compact_map();
  const int num_comm = part.num_communities();
  const auto& et = g.edges();
  const bool undir = !g.directed();
  const auto& assign = part.assignment();

  using Row = std::tuple<VertexId, VertexId, double>;
  auto map = [&](std::size_t begin, std::size_t end) {
    std::vector<Row> rows;
    rows.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      VertexId cs = remap[assign[et.src[i]]];
      VertexId cd = remap[assign[et.dst[i]]];
      if (undir && cs > cd) std::swap(cs, cd);
      rows.emplace_back(cs, cd, et.weight[i]);
    }
    return rows;
  };
  auto reduce = [](std::vector<Row> acc, std::vector<Row> part_rows) {
    acc.insert(acc.end(), part_rows.begin(), part_rows.end());
    return acc;
  };

  std::vector<Row> rows = parallel_map_reduce(
      pool, et.size(), g.effective_partitions(pool), map, reduce,
      std::vector<Row>{});

  VertexTable vt;
  vt.labels.reserve(num_comm);
  for (int c = 0; c < num_comm; ++c) vt.intern(std::to_string(c));

  // stable sort keeps the original edge order within each pair, so the
  // summed weights are reproducible for any partitioning
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                            : std::get<1>(a) < std::get<1>(b);
  });
  EdgeTable edges;
  for (std::size_t i = 0; i < rows.size();) {
    auto [s, d, w] = rows[i];
    std::size_t j = i + 1;
    for (; j < rows.size() && std::get<0>(rows[j]) == s && std::get<1>(rows[j]) == d; ++j)
      w += std::get<2>(rows[j]);
    edges.push(s, d, w);
    i = j;
  }
  return GraphFrame(std::move(vt), std::move(edges), g.directedness(),
                    g.num_partitions());
}

GraphFrame contract(const GraphFrame& g, const Partition& part) {
  WorkerPool pool(1);
  return contract(g, part, pool);
}

}  // namespace comdet
