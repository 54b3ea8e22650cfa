#include "comdet/kclique.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

#include "comdet/error.hpp"

namespace comdet {

namespace {

struct CapReached {};

// Symmetrized simple adjacency: sorted unique neighbor lists, direction and
// self-loops dropped. Clique topology does not care about either.
std::vector<std::vector<VertexId>> simple_neighbors(const GraphFrame& g) {
  std::vector<std::vector<VertexId>> nl(g.num_vertices());
  const auto& et = g.edges();
  for (std::size_t e = 0; e < et.size(); ++e) {
    VertexId s = et.src[e], d = et.dst[e];
    if (s == d) continue;
    nl[s].push_back(d);
    nl[d].push_back(s);
  }
  for (auto& row : nl) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return nl;
}

// C(s, k), saturated to cap + 1 so callers can test "over the cap" without
// overflow.
std::uint64_t binom_capped(int s, int k, std::uint64_t cap) {
  if (k < 0 || k > s) return 0;
  k = std::min(k, s - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(s - k + i) / static_cast<unsigned>(i);
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

// Maximal-clique search with pivoting, restricted to the cliques whose
// minimum vertex is the root: P starts as the root's later neighbors and X
// as its earlier ones, so each maximal clique is found at exactly one root.
// Every maximal clique of size >= k is expanded into its k-subsets.
class RootSearch {
 public:
  RootSearch(const std::vector<std::vector<VertexId>>& nl, int k,
             std::uint64_t cap, std::atomic<std::uint64_t>& emitted,
             std::vector<std::vector<VertexId>>& out)
      : nl_(nl), k_(k), cap_(cap), emitted_(emitted), out_(out) {}

  void run(VertexId root) {
    root_ = root;
    const auto& nbrs = nl_[root];
    d_ = static_cast<int>(nbrs.size());
    if (d_ + 1 < k_) return;  // no clique through this root can reach size k
    words_ = (d_ + 63) / 64;
    adj_.assign(static_cast<std::size_t>(d_) * words_, 0);
    for (int i = 0; i < d_; ++i) {
      const auto& row = nl_[nbrs[i]];
      std::size_t a = 0, b = 0;
      while (a < row.size() && b < nbrs.size()) {
        if (row[a] < nbrs[b]) {
          ++a;
        } else if (row[a] > nbrs[b]) {
          ++b;
        } else {
          adj_[static_cast<std::size_t>(i) * words_ + (b >> 6)] |=
              1ULL << (b & 63);
          ++a;
          ++b;
        }
      }
    }
    std::vector<std::uint64_t> p(words_, 0), x(words_, 0);
    for (int i = 0; i < d_; ++i)
      (nbrs[i] > root ? p : x)[i >> 6] |= 1ULL << (i & 63);
    stack_.clear();
    expand(p, x);
  }

 private:
  const std::uint64_t* adj_row(int u) const {
    return adj_.data() + static_cast<std::size_t>(u) * words_;
  }

  void expand(std::vector<std::uint64_t>& p, std::vector<std::uint64_t>& x) {
    bool open = false;
    for (int w = 0; w < words_ && !open; ++w) open = (p[w] | x[w]) != 0;
    if (!open) {
      report_maximal();
      return;
    }
    // pivot: the candidate covering the most of P; its neighbors can wait
    int pivot = -1, best = -1;
    for (int w = 0; w < words_; ++w) {
      std::uint64_t bits = p[w] | x[w];
      while (bits) {
        int u = (w << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        const std::uint64_t* row = adj_row(u);
        int cnt = 0;
        for (int t = 0; t < words_; ++t) cnt += std::popcount(p[t] & row[t]);
        if (cnt > best) {
          best = cnt;
          pivot = u;
        }
      }
    }
    const std::uint64_t* prow = adj_row(pivot);
    std::vector<std::uint64_t> cand(words_);
    for (int w = 0; w < words_; ++w) cand[w] = p[w] & ~prow[w];
    std::vector<std::uint64_t> np(words_), nx(words_);
    for (int w = 0; w < words_; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        int c = (w << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        const std::uint64_t* crow = adj_row(c);
        for (int t = 0; t < words_; ++t) {
          np[t] = p[t] & crow[t];
          nx[t] = x[t] & crow[t];
        }
        stack_.push_back(c);
        expand(np, nx);
        stack_.pop_back();
        p[c >> 6] &= ~(1ULL << (c & 63));
        x[c >> 6] |= 1ULL << (c & 63);
      }
    }
  }

  void report_maximal() {
    const int s = static_cast<int>(stack_.size()) + 1;
    if (s < k_) return;
    std::uint64_t count = binom_capped(s, k_, cap_);
    if (emitted_.fetch_add(count) + count > cap_) throw CapReached{};
    clique_.clear();
    clique_.push_back(root_);
    for (int i : stack_) clique_.push_back(nl_[root_][i]);
    std::sort(clique_.begin(), clique_.end());
    comb_.resize(k_);
    std::iota(comb_.begin(), comb_.end(), 0);
    while (true) {
      std::vector<VertexId> sub(k_);
      for (int t = 0; t < k_; ++t) sub[t] = clique_[comb_[t]];
      out_.push_back(std::move(sub));
      int i = k_ - 1;
      while (i >= 0 && comb_[i] == s - k_ + i) --i;
      if (i < 0) break;
      ++comb_[i];
      for (int t = i + 1; t < k_; ++t) comb_[t] = comb_[t - 1] + 1;
    }
  }

  const std::vector<std::vector<VertexId>>& nl_;
  int k_;
  std::uint64_t cap_;
  std::atomic<std::uint64_t>& emitted_;
  std::vector<std::vector<VertexId>>& out_;

  VertexId root_ = 0;
  int d_ = 0, words_ = 0;
  std::vector<std::uint64_t> adj_;
  std::vector<int> stack_;  // local indices of the clique beyond the root
  std::vector<VertexId> clique_;
  std::vector<int> comb_;
};

}  // namespace

CliqueSet enumerate_kcliques(const GraphFrame& g, WorkerPool& pool,
                             const KCliqueOptions& opt) {
  if (opt.k < 2) throw std::invalid_argument("k-clique size must be >= 2");
  const int n = g.num_vertices();
  CliqueSet cs;
  cs.k = opt.k;
  if (n == 0) return cs;

  const auto nl = simple_neighbors(g);
  std::atomic<std::uint64_t> emitted{0};
  std::atomic<bool> capped{false};
  using Tuples = std::vector<std::vector<VertexId>>;

  Tuples all = parallel_map_reduce<Tuples>(
      pool, static_cast<std::size_t>(n), g.num_partitions(),
      [&](std::size_t begin, std::size_t end) {
        Tuples local;
        RootSearch search(nl, opt.k, opt.max_cliques, emitted, local);
        try {
          for (std::size_t v = begin; v < end; ++v)
            search.run(static_cast<VertexId>(v));
        } catch (const CapReached&) {
          capped.store(true);
        }
        return local;
      },
      [](Tuples acc, Tuples part) {
        acc.insert(acc.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
        return acc;
      },
      Tuples{});
  if (capped.load())
    throw CapacityError("clique enumeration exceeded the cap of " +
                        std::to_string(opt.max_cliques) + " k-tuples");

  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  cs.cliques = std::move(all);

  std::vector<VertexId> sub(opt.k - 1);
  for (std::size_t id = 0; id < cs.cliques.size(); ++id) {
    const auto& cl = cs.cliques[id];
    for (int drop = 0; drop < opt.k; ++drop) {
      int t = 0;
      for (int i = 0; i < opt.k; ++i)
        if (i != drop) sub[t++] = cl[i];
      cs.index[sub].push_back(static_cast<int>(id));
    }
  }
  return cs;
}

CliqueSet enumerate_kcliques(const GraphFrame& g, int k) {
  WorkerPool pool(1);
  KCliqueOptions opt;
  opt.k = k;
  return enumerate_kcliques(g, pool, opt);
}

OverlappingCommunities percolate(const GraphFrame& g, const CliqueSet& cs) {
  OverlappingCommunities out;
  out.num_cliques = cs.cliques.size();
  out.membership.resize(g.num_vertices());
  const int c = static_cast<int>(cs.cliques.size());
  if (c == 0) return out;

  std::vector<int> parent(c);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [sub, ids] : cs.index)
    for (std::size_t t = 1; t < ids.size(); ++t)
      parent[find(ids[0])] = find(ids[t]);

  std::vector<std::vector<VertexId>> members(c);
  for (int id = 0; id < c; ++id) {
    auto& m = members[find(id)];
    m.insert(m.end(), cs.cliques[id].begin(), cs.cliques[id].end());
  }
  for (auto& m : members) {
    if (m.empty()) continue;
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    out.communities.push_back(std::move(m));
  }
  std::sort(out.communities.begin(), out.communities.end());

  for (std::size_t ci = 0; ci < out.communities.size(); ++ci)
    for (VertexId v : out.communities[ci])
      out.membership[v].push_back(static_cast<int>(ci));
  return out;
}

OverlappingCommunities run_kcliques(const GraphFrame& g, WorkerPool& pool,
                                    const KCliqueOptions& opt,
                                    PhaseTimings* timings) {
  std::optional<CliqueSet> cs;
  {
    PhaseClock clock(timings, "clique_enum");
    cs.emplace(enumerate_kcliques(g, pool, opt));
  }
  PhaseClock clock(timings, "percolate");
  OverlappingCommunities out = percolate(g, *cs);
  cs.reset();  // teardown of the clique inventory is percolation bookkeeping
  return out;
}

OverlappingCommunities run_kcliques(const GraphFrame& g, int k) {
  WorkerPool pool(1);
  KCliqueOptions opt;
  opt.k = k;
  return run_kcliques(g, pool, opt);
}

}  // namespace comdet
