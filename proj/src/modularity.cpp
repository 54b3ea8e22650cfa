#include "comdet/modularity.hpp"

#include <stdexcept>
#include <vector>

namespace comdet {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

ModularityScore modularity_undirected(const GraphFrame& g, const Partition& p) {
  require(!g.directed(), "modularity_undirected needs an undirected graph");
  const double m = g.total_weight();
  require(m > 0.0, "modularity is undefined on a graph with no edge weight");

  const auto& assign = p.assignment();
  require(assign.size() == static_cast<std::size_t>(g.num_vertices()),
          "partition does not match the graph");

  int bound = 0;
  for (int c : assign) bound = std::max(bound, c + 1);
  std::vector<double> w_in(bound, 0.0);
  std::vector<double> k_sum(bound, 0.0);

  const auto& et = g.edges();
  for (std::size_t i = 0; i < et.size(); ++i) {
    VertexId s = et.src[i], d = et.dst[i];
    double w = et.weight[i];
    if (assign[s] == assign[d]) w_in[assign[s]] += w;
    k_sum[assign[s]] += w;
    k_sum[assign[d]] += w;  // self-loops intentionally count twice
  }

  double q = 0.0;
  for (int c = 0; c < bound; ++c)
    q += w_in[c] / m - (k_sum[c] * k_sum[c]) / (4.0 * m * m);
  return q;
}

ModularityScore modularity_directed(const GraphFrame& g, const Partition& p) {
  require(g.directed(), "modularity_directed needs a directed graph");
  const double m = g.total_weight();
  require(m > 0.0, "modularity is undefined on a graph with no edge weight");

  const auto& assign = p.assignment();
  require(assign.size() == static_cast<std::size_t>(g.num_vertices()),
          "partition does not match the graph");

  int bound = 0;
  for (int c : assign) bound = std::max(bound, c + 1);
  std::vector<double> w_in(bound, 0.0);
  std::vector<double> tot_in(bound, 0.0);
  std::vector<double> tot_out(bound, 0.0);

  const auto& et = g.edges();
  for (std::size_t i = 0; i < et.size(); ++i) {
    VertexId s = et.src[i], d = et.dst[i];
    double w = et.weight[i];
    if (assign[s] == assign[d]) w_in[assign[s]] += w;
    tot_out[assign[s]] += w;
    tot_in[assign[d]] += w;
  }

  double q = 0.0;
  for (int c = 0; c < bound; ++c)
    q += w_in[c] / m - tot_in[c] * tot_out[c] / (m * m);
  return q;
}

ModularityScore modularity(const GraphFrame& g, const Partition& p) {
  return g.directed() ? modularity_directed(g, p) : modularity_undirected(g, p);
}

double gain_undirected(const GraphFrame& g, const DegreeVector& deg,
                       const Partition& p, VertexId v, int community) {
  require(!g.directed(), "gain_undirected needs an undirected graph");
  require(community >= 0 && community < p.id_bound(),
          "community id out of range");
  const double m = g.total_weight();
  require(m > 0.0, "gain is undefined on a graph with no edge weight");

  double k_v_C = 0.0;
  auto nb = g.neighbors(v);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    if (nb.ids[i] == v) continue;  // self-loop moves with v
    if (p.community_of(nb.ids[i]) == community) k_v_C += nb.weights[i];
  }
  double tot_C = p.totals()[community];
  if (p.community_of(v) == community) tot_C -= deg.k[v];  // v leaves first
  return gain_terms_undirected(k_v_C, deg.k[v], tot_C, m);
}

double gain_directed(const GraphFrame& g, const DegreeVector& deg,
                     const Partition& p, VertexId v, int community) {
  require(g.directed(), "gain_directed needs a directed graph");
  require(community >= 0 && community < p.id_bound(),
          "community id out of range");
  const double m = g.total_weight();
  require(m > 0.0, "gain is undefined on a graph with no edge weight");

  double k_v_C = 0.0;
  auto out = g.out_neighbors(v);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out.ids[i] == v) continue;
    if (p.community_of(out.ids[i]) == community) k_v_C += out.weights[i];
  }
  auto in = g.in_neighbors(v);
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in.ids[i] == v) continue;
    if (p.community_of(in.ids[i]) == community) k_v_C += in.weights[i];
  }

  double tot_in_C = p.totals_in()[community];
  double tot_out_C = p.totals_out()[community];
  if (p.community_of(v) == community) {
    tot_in_C -= deg.k_in[v];
    tot_out_C -= deg.k_out[v];
  }
  return gain_terms_directed(k_v_C, deg.k_in[v], deg.k_out[v], tot_in_C,
                             tot_out_C, m);
}

double gain(const GraphFrame& g, const DegreeVector& deg, const Partition& p,
            VertexId v, int community) {
  return g.directed() ? gain_directed(g, deg, p, v, community)
                      : gain_undirected(g, deg, p, v, community);
}

}  // namespace comdet
