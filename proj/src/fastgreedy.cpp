#include "comdet/fastgreedy.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "comdet/modularity.hpp"

namespace comdet {

DeltaQMatrix::DeltaQMatrix(const GraphFrame& g, const DegreeVector& deg) {
  const int n = g.num_vertices();
  const double m = g.total_weight();
  directed_ = g.directed();
  num_alive_ = n;
  rows_.resize(n);
  row_heaps_.resize(n);
  versions_.assign(n, 0);
  alive_.assign(n, 1);
  if (directed_) {
    a_in_.resize(n);
    a_out_.resize(n);
  } else {
    a_.resize(n);
  }
  if (m == 0.0) return;  // no pairs to merge; q of the edgeless graph is 0

  for (int v = 0; v < n; ++v) {
    if (directed_) {
      a_in_[v] = deg.k_in[v] / m;
      a_out_[v] = deg.k_out[v] / m;
    } else {
      a_[v] = deg.k[v] / (2.0 * m);
    }
  }

  // Singleton modularity: self-loops are the only internal weight.
  const auto& et = g.edges();
  for (std::size_t e = 0; e < et.size(); ++e)
    if (et.src[e] == et.dst[e]) q_current_ += et.weight[e] / m;
  for (int v = 0; v < n; ++v)
    q_current_ -= directed_ ? a_in_[v] * a_out_[v] : a_[v] * a_[v];

  // Pair gains exist exactly for connected pairs: the edge term w/m minus
  // the degree-fraction correction.
  for (std::size_t e = 0; e < et.size(); ++e) {
    int s = et.src[e], d = et.dst[e];
    if (s == d) continue;
    double w = et.weight[e];
    auto it = rows_[s].find(d);
    if (it == rows_[s].end()) {
      double v = w / m - pair_correction(s, d);
      rows_[s].emplace(d, v);
      rows_[d].emplace(s, v);
    } else {
      // the opposite orientation of a directed pair
      it->second += w / m;
      rows_[d][s] = it->second;
    }
  }
  for (int v = 0; v < n; ++v) {
    for (auto [q, val] : rows_[v]) row_heaps_[v].push({val, q});
    refresh_row(v);
  }
}

void DeltaQMatrix::set_pair(int x, int q, double v) {
  rows_[x][q] = v;
  row_heaps_[x].push({v, q});
}

void DeltaQMatrix::refresh_row(int c) {
  std::uint64_t ver = ++versions_[c];
  auto& heap = row_heaps_[c];
  while (!heap.empty()) {
    RowEntry top = heap.top();
    auto it = rows_[c].find(top.j);
    if (it != rows_[c].end() && it->second == top.v) {
      global_.push({top.v, c, top.j, ver});
      return;
    }
    heap.pop();  // stale: neighbor gone or value changed
  }
}

bool DeltaQMatrix::merge_one(MergeTrace& trace) {
  if (num_alive_ < 2)
    throw std::invalid_argument("merge_step needs at least two communities");

  // Pop until a fresh entry surfaces. A fresh version stamp certifies the
  // entry as its row's current best, so the first hit is the global max.
  double best_v = 0.0;
  int i = -1, j = -1;
  while (!global_.empty()) {
    GlobalEntry top = global_.top();
    global_.pop();
    if (alive_[top.i] && top.ver == versions_[top.i]) {
      best_v = top.v;
      i = top.i;
      j = top.j;
      break;
    }
  }
  if (i < 0) return false;  // every remaining community pair is disconnected

  if (trace.steps.empty()) trace.q_initial = q_current_;

  // The merged community keeps label j. The pair math is symmetric, so to
  // fold the smaller row we may swap the slots' state wholesale.
  if (rows_[i].size() > rows_[j].size()) {
    std::swap(rows_[i], rows_[j]);
    std::swap(row_heaps_[i], row_heaps_[j]);
    if (directed_) {
      std::swap(a_in_[i], a_in_[j]);
      std::swap(a_out_[i], a_out_[j]);
    } else {
      std::swap(a_[i], a_[j]);
    }
  }
  rows_[i].erase(j);
  rows_[j].erase(i);
  rows_[i].erase(i);
  rows_[j].erase(j);

  // Neighbors of the absorbed slot: adjacent to both -> gains add; only to
  // the absorbed slot -> correct by the other slot's degree fraction.
  std::vector<std::pair<int, double>> absorbed(rows_[i].begin(), rows_[i].end());
  for (auto [q, vi] : absorbed) {
    auto it = rows_[j].find(q);
    double nv;
    if (it != rows_[j].end()) {
      nv = vi + it->second;
      it->second = nv;
    } else {
      nv = vi - pair_correction(j, q);
      rows_[j].emplace(q, nv);
    }
    rows_[q].erase(i);
    set_pair(q, j, nv);
    refresh_row(q);
  }
  // Neighbors of the surviving slot only. After a slot swap their entry for
  // the merged community may still sit under the absorbed label, so drop it.
  for (auto& [q, vj] : rows_[j]) {
    if (rows_[i].count(q)) continue;  // handled above
    vj -= pair_correction(i, q);
    rows_[q].erase(i);
    set_pair(q, j, vj);
    refresh_row(q);
  }

  if (directed_) {
    a_in_[j] += a_in_[i];
    a_out_[j] += a_out_[i];
  } else {
    a_[j] += a_[i];
  }
  rows_[i].clear();
  row_heaps_[i] = RowHeap();
  alive_[i] = 0;
  --num_alive_;

  // Rebuilding the survivor's heap outright beats pushing updates lazily:
  // it stays tight instead of accumulating one stale entry per update.
  row_heaps_[j] = RowHeap();
  for (auto [q, v] : rows_[j]) row_heaps_[j].push({v, q});
  refresh_row(j);

  q_current_ += best_v;
  trace.steps.push_back({i, j, best_v, q_current_});
  return true;
}

DeltaQMatrix init_deltaq(const GraphFrame& g, const DegreeVector& deg) {
  return DeltaQMatrix(g, deg);
}

DeltaQMatrix init_deltaq(const GraphFrame& g) {
  return DeltaQMatrix(g, degrees(g));
}

bool merge_step(DeltaQMatrix& state, MergeTrace& trace) {
  return state.merge_one(trace);
}

namespace {

// Replays the first `cut` merges to an assignment over original vertices.
std::vector<int> assignment_at_cut(int n, const std::vector<MergeStep>& steps,
                                   std::size_t cut) {
  std::vector<int> parent(n);
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t t = 0; t < cut; ++t)
    parent[find(steps[t].absorbed)] = find(steps[t].survivor);
  std::vector<int> assign(n);
  for (int v = 0; v < n; ++v) assign[v] = find(v);
  return assign;
}

}  // namespace

MergeTrace run_fastgreedy(const GraphFrame& g, WorkerPool& pool,
                          PhaseTimings* timings) {
  MergeTrace trace;

  DegreeVector deg;
  {
    PhaseClock clock(timings, "degree");
    deg = degrees(g, pool);
  }

  DeltaQMatrix state = [&] {
    PhaseClock clock(timings, "init_deltaq");
    return DeltaQMatrix(g, deg);
  }();
  trace.q_initial = state.q_current();

  {
    PhaseClock clock(timings, "merges");
    while (state.num_alive() > 1 && state.merge_one(trace)) {
    }
  }

  {
    PhaseClock clock(timings, "score");
    trace.best_cut = 0;
    trace.best_q = trace.q_initial;
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
      if (trace.steps[t].q_after > trace.best_q) {
        trace.best_q = trace.steps[t].q_after;
        trace.best_cut = t + 1;
      }
    }
    std::vector<int> assign =
        assignment_at_cut(g.num_vertices(), trace.steps, trace.best_cut);
    trace.best_partition =
        Partition::from_assignment(g, deg, std::move(assign)).compacted(g, deg);
  }
  return trace;
}

MergeTrace run_fastgreedy(const GraphFrame& g) {
  WorkerPool pool(1);
  return run_fastgreedy(g, pool);
}

}  // namespace comdet
