#include "comdet/louvain.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "comdet/modularity.hpp"

namespace comdet {

namespace {

void check_config(const LouvainConfig& cfg) {
  if (!(cfg.min_gain > 0.0))
    throw std::invalid_argument("min_gain must be > 0");
  if (cfg.max_passes < 1) throw std::invalid_argument("max_passes must be >= 1");
  if (cfg.max_sweeps_per_pass < 1)
    throw std::invalid_argument("max_sweeps_per_pass must be >= 1");
}

// Community ids stay within [0, n): a community's id is the initial vertex
// id it grew from, which allows dense scratch arrays throughout.
std::vector<int> moving_impl(const GraphFrame& g, const DegreeVector& deg,
                             const LouvainConfig& cfg, std::mt19937_64& rng,
                             const MoveObserver& observer,
                             std::size_t* moves_out) {
  const VertexId n = g.num_vertices();
  const double m = g.total_weight();
  const bool dir = g.directed();

  std::vector<int> assign(n);
  for (VertexId v = 0; v < n; ++v) assign[v] = v;
  if (m == 0.0) {
    if (moves_out) *moves_out = 0;
    return assign;  // nothing to score; singletons stand
  }

  std::vector<double> tot, tot_in, tot_out;
  if (dir) {
    tot_in = deg.k_in;
    tot_out = deg.k_out;
  } else {
    tot = deg.k;
  }

  std::vector<double> k_v_C(n, 0.0);  // weight between v and each community
  std::vector<int> touched;
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;

  std::size_t total_moves = 0;
  for (int sweep = 0; sweep < cfg.max_sweeps_per_pass; ++sweep) {
    // Fisher-Yates by hand: the shuffle must not depend on how the
    // standard library maps random bits to ranges.
    for (VertexId i = n - 1; i > 0; --i)
      std::swap(order[i], order[static_cast<VertexId>(rng() % (i + 1u))]);
    std::size_t moves = 0;

    for (VertexId v : order) {
      const int old = assign[v];

      touched.clear();
      auto accumulate = [&](NeighborList nb) {
        for (std::size_t i = 0; i < nb.size(); ++i) {
          VertexId u = nb.ids[i];
          if (u == v) continue;  // the self-loop moves with v
          int c = assign[u];
          if (k_v_C[c] == 0.0) touched.push_back(c);
          k_v_C[c] += nb.weights[i];
        }
      };
      accumulate(g.neighbors(v));
      if (dir) accumulate(g.in_neighbors(v));

      if (std::find(touched.begin(), touched.end(), old) == touched.end())
        touched.push_back(old);
      std::sort(touched.begin(), touched.end());

      // take v out of its community, then score each candidate
      double stay_gain = 0.0, best_gain = 0.0;
      int best = -1;
      if (dir) {
        tot_in[old] -= deg.k_in[v];
        tot_out[old] -= deg.k_out[v];
      } else {
        tot[old] -= deg.k[v];
      }
      for (int c : touched) {
        double gain =
            dir ? gain_terms_directed(k_v_C[c], deg.k_in[v], deg.k_out[v],
                                      tot_in[c], tot_out[c], m)
                : gain_terms_undirected(k_v_C[c], deg.k[v], tot[c], m);
        if (c == old) stay_gain = gain;
        if (best < 0 || gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }

      int dest = old;
      if (best != old && best_gain - stay_gain > cfg.min_gain) dest = best;
      if (dir) {
        tot_in[dest] += deg.k_in[v];
        tot_out[dest] += deg.k_out[v];
      } else {
        tot[dest] += deg.k[v];
      }
      if (dest != old) {
        assign[v] = dest;
        ++moves;
        if (observer) observer({v, old, dest, best_gain - stay_gain});
      }

      for (int c : touched) k_v_C[c] = 0.0;
    }

    total_moves += moves;
    if (moves == 0) break;
  }
  if (moves_out) *moves_out = total_moves;
  return assign;
}

std::vector<int> flatten(const std::vector<Partition>& levels, VertexId n) {
  std::vector<int> flat(n);
  if (levels.empty()) {
    for (VertexId v = 0; v < n; ++v) flat[v] = v;
    return flat;
  }
  flat = levels.front().assignment();
  for (std::size_t l = 1; l < levels.size(); ++l)
    for (VertexId v = 0; v < n; ++v) flat[v] = levels[l].assignment()[flat[v]];
  return flat;
}

}  // namespace

Partition local_moving(const GraphFrame& g, const LouvainConfig& cfg,
                       const MoveObserver& observer) {
  check_config(cfg);
  DegreeVector deg = degrees(g);
  std::mt19937_64 rng(cfg.seed);
  std::vector<int> assign = moving_impl(g, deg, cfg, rng, observer, nullptr);
  return Partition::from_assignment(g, deg, std::move(assign));
}

Dendrogram run_louvain(const GraphFrame& g, const LouvainConfig& cfg,
                       WorkerPool& pool, PhaseTimings* timings,
                       const MoveObserver& observer) {
  check_config(cfg);
  Dendrogram out;

  if (g.total_weight() == 0.0) {
    // Degenerate but reachable from real inputs: every vertex stays its own
    // community and q is 0 by convention (no edges to score).
    DegreeVector deg;
    {
      PhaseClock clock(timings, "degree");
      deg = degrees(g, pool);
    }
    Partition p = Partition::singletons(g, deg);
    out.final_assignment = p.assignment();
    out.num_communities = p.num_communities();
    out.levels.push_back(std::move(p));
    out.q_per_level.push_back(0.0);
    return out;
  }

  GraphFrame work = g;  // current working graph; replaced after each pass
  std::mt19937_64 rng(cfg.seed);
  double q_prev = 0.0;
  bool have_q_prev = false;

  for (int pass = 0; pass < cfg.max_passes; ++pass) {
    DegreeVector deg;
    {
      PhaseClock clock(timings, "degree");
      deg = degrees(work, pool);
    }

    std::size_t moves = 0;
    Partition part;
    {
      PhaseClock clock(timings, "local_moving");
      auto assign = moving_impl(work, deg, cfg, rng, observer, &moves);
      part = Partition::from_assignment(work, deg, std::move(assign))
                 .compacted(work, deg);
    }

    double q;
    {
      PhaseClock clock(timings, "score");
      q = modularity(work, part);
    }

    if (have_q_prev && (moves == 0 || q <= q_prev + cfg.min_gain)) break;

    out.q_per_level.push_back(q);
    out.levels.push_back(part);
    q_prev = q;
    have_q_prev = true;
    // A pass with at least one move strictly grouped something, so the
    // contraction below shrinks the graph; a moveless first pass stands
    // as the (singleton) result.
    if (moves == 0) break;

    {
      PhaseClock clock(timings, "contract");
      work = contract(work, part, pool);
    }
  }

  // The dendrogram must be self-consistent: flattening may not change q.
  double q_flat;
  {
    PhaseClock clock(timings, "score");
    out.final_assignment = flatten(out.levels, g.num_vertices());
    out.num_communities = out.levels.back().num_communities();
    DegreeVector deg0 = degrees(g, pool);
    q_flat = modularity(
        g, Partition::from_assignment(g, deg0, out.final_assignment));
  }
  double q_last = out.q_per_level.back();
  if (std::abs(q_flat - q_last) >
      1e-9 * std::max({1.0, std::abs(q_flat), std::abs(q_last)}))
    throw std::logic_error("dendrogram inconsistency: flattened q " +
                           std::to_string(q_flat) + " vs level q " +
                           std::to_string(q_last));
  return out;
}

Dendrogram run_louvain(const GraphFrame& g, const LouvainConfig& cfg) {
  WorkerPool pool(1);
  return run_louvain(g, cfg, pool);
}

}  // namespace comdet
