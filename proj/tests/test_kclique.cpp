#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <tuple>

#include "comdet/error.hpp"
#include "comdet/kclique.hpp"
#include "oracles.hpp"

using namespace comdet;

namespace {

GraphFrame from_edges(int n, const std::vector<oracle::Edge>& edges,
                      Directedness d = Directedness::Undirected) {
  std::vector<std::tuple<VertexId, VertexId, double>> rows;
  for (auto [s, de, w] : edges) rows.emplace_back(s, de, w);
  return build_graph_from_ids(n, rows, d);
}

std::vector<oracle::Edge> complete(int n, int base = 0) {
  std::vector<oracle::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(base + i, base + j, 1.0);
  return edges;
}

}  // namespace

TEST_CASE("clique counts on complete graphs") {
  GraphFrame k5 = from_edges(5, complete(5));
  CHECK(enumerate_kcliques(k5, 3).cliques.size() == 10);
  CHECK(enumerate_kcliques(k5, 4).cliques.size() == 5);
  CHECK(enumerate_kcliques(k5, 5).cliques.size() == 1);
  CHECK(enumerate_kcliques(k5, 6).cliques.empty());

  GraphFrame tri = from_edges(3, complete(3));
  CliqueSet cs = enumerate_kcliques(tri, 3);
  REQUIRE(cs.cliques.size() == 1);
  CHECK(cs.cliques[0] == std::vector<VertexId>{0, 1, 2});
  // every 2-subset of the lone triangle indexes it
  CHECK(cs.index.size() == 3);
  for (const auto& [sub, ids] : cs.index) CHECK(ids == std::vector<int>{1 - 1});
}

TEST_CASE("overlapping maximal cliques produce each k-tuple once") {
  // two K4s sharing the triangle {0,1,2}
  auto edges = complete(4);
  edges.emplace_back(0, 4, 1.0);
  edges.emplace_back(1, 4, 1.0);
  edges.emplace_back(2, 4, 1.0);
  CliqueSet cs = enumerate_kcliques(from_edges(5, edges), 3);
  CHECK(cs.cliques.size() == 7);  // 4 + 4 minus the shared triangle
  CHECK(std::is_sorted(cs.cliques.begin(), cs.cliques.end()));
  CHECK(std::adjacent_find(cs.cliques.begin(), cs.cliques.end()) ==
        cs.cliques.end());
}

TEST_CASE("two triangles sharing an edge percolate into one community") {
  std::vector<oracle::Edge> edges = {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0},
                                     {1, 3, 1.0}, {2, 3, 1.0}};
  GraphFrame g = from_edges(4, edges);
  CliqueSet cs = enumerate_kcliques(g, 3);
  REQUIRE(cs.cliques.size() == 2);
  CHECK(cs.index.at({1, 2}).size() == 2);  // the shared edge joins them
  OverlappingCommunities oc = percolate(g, cs);
  REQUIRE(oc.communities.size() == 1);
  CHECK(oc.communities[0] == std::vector<VertexId>{0, 1, 2, 3});
  CHECK(oc.num_cliques == 2);
}

TEST_CASE("disjoint triangles stay apart") {
  auto edges = complete(3);
  auto more = complete(3, 3);
  edges.insert(edges.end(), more.begin(), more.end());
  OverlappingCommunities oc = run_kcliques(from_edges(6, edges), 3);
  REQUIRE(oc.communities.size() == 2);
  CHECK(oc.communities[0] == std::vector<VertexId>{0, 1, 2});
  CHECK(oc.communities[1] == std::vector<VertexId>{3, 4, 5});
}

TEST_CASE("bowtie: one shared vertex is not enough to merge") {
  // triangles {0,1,2} and {2,3,4} meet only at vertex 2
  std::vector<oracle::Edge> edges = {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0},
                                     {2, 3, 1.0}, {2, 4, 1.0}, {3, 4, 1.0}};
  OverlappingCommunities oc = run_kcliques(from_edges(5, edges), 3);
  REQUIRE(oc.communities.size() == 2);
  CHECK(oc.communities[0] == std::vector<VertexId>{0, 1, 2});
  CHECK(oc.communities[1] == std::vector<VertexId>{2, 3, 4});
  CHECK(oc.membership[2] == std::vector<int>{0, 1});  // the overlap
  CHECK(oc.membership[0] == std::vector<int>{0});
  CHECK(oc.membership[4] == std::vector<int>{1});
}

TEST_CASE("vertices outside every k-clique belong nowhere") {
  auto edges = complete(4);
  edges.emplace_back(3, 4, 1.0);  // pendant
  OverlappingCommunities oc = run_kcliques(from_edges(5, edges), 3);
  REQUIRE(oc.communities.size() == 1);
  CHECK(oc.communities[0] == std::vector<VertexId>{0, 1, 2, 3});
  CHECK(oc.membership[4].empty());
}

TEST_CASE("degenerate inputs") {
  OverlappingCommunities none = run_kcliques(from_edges(0, {}), 3);
  CHECK(none.communities.empty());
  CHECK(none.num_cliques == 0);

  OverlappingCommunities bare = run_kcliques(from_edges(3, {}), 3);
  CHECK(bare.communities.empty());
  for (const auto& m : bare.membership) CHECK(m.empty());

  CHECK_THROWS_AS(enumerate_kcliques(from_edges(3, complete(3)), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_kcliques(from_edges(3, complete(3)), 0),
                  std::invalid_argument);
}

TEST_CASE("pairs percolate like connected components when k is 2") {
  std::vector<oracle::Edge> edges = {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}};
  OverlappingCommunities oc = run_kcliques(from_edges(6, edges), 2);
  REQUIRE(oc.communities.size() == 2);
  CHECK(oc.communities[0] == std::vector<VertexId>{0, 1, 2});
  CHECK(oc.communities[1] == std::vector<VertexId>{3, 4});
  CHECK(oc.membership[5].empty());
}

TEST_CASE("direction and weights are ignored") {
  std::vector<oracle::Edge> dir = {{0, 1, 2.0}, {2, 1, 0.5}, {0, 2, 3.0},
                                   {2, 3, 1.0}};
  CliqueSet a = enumerate_kcliques(from_edges(4, dir, Directedness::Directed), 3);
  REQUIRE(a.cliques.size() == 1);
  CHECK(a.cliques[0] == std::vector<VertexId>{0, 1, 2});

  // a directed two-cycle is still one undirected edge
  std::vector<oracle::Edge> cyc = {{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 1.0},
                                   {2, 0, 1.0}};
  CliqueSet b = enumerate_kcliques(from_edges(3, cyc, Directedness::Directed), 3);
  REQUIRE(b.cliques.size() == 1);
}

TEST_CASE("enumeration cap fails hard instead of truncating") {
  GraphFrame k6 = from_edges(6, complete(6));
  WorkerPool pool(1);
  KCliqueOptions opt;
  opt.k = 3;
  opt.max_cliques = 19;  // K6 expands to exactly C(6,3) = 20 triangles
  CHECK_THROWS_AS(enumerate_kcliques(k6, pool, opt), CapacityError);
  opt.max_cliques = 20;
  CHECK(enumerate_kcliques(k6, pool, opt).cliques.size() == 20);
}

TEST_CASE("agreement with the brute-force oracle") {
  std::mt19937_64 rng(424);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 4 + static_cast<int>(rng() % 9);
    int k = 3 + trial % 3;
    double density = 0.2 + 0.06 * (trial % 9);
    bool directed = trial % 5 == 0;
    auto edges = oracle::random_graph(rng, n, density, directed,
                                      trial % 2 == 0, trial % 7 == 0);
    GraphFrame g = from_edges(
        n, edges, directed ? Directedness::Directed : Directedness::Undirected);

    CliqueSet cs = enumerate_kcliques(g, k);
    auto want = oracle::kcliques_brute(n, edges, k);
    CHECK_MESSAGE(cs.cliques == want, "trial ", trial, ": ",
                  cs.cliques.size(), " cliques vs ", want.size());

    OverlappingCommunities oc = percolate(g, cs);
    auto want_comms = oracle::percolation_brute(want, k);
    CHECK_MESSAGE(oc.communities == want_comms, "trial ", trial, ": ",
                  oc.communities.size(), " communities vs ",
                  want_comms.size());

    // membership is the exact inverse of the community lists
    std::vector<std::vector<int>> inverse(n);
    for (std::size_t ci = 0; ci < oc.communities.size(); ++ci)
      for (VertexId v : oc.communities[ci])
        inverse[v].push_back(static_cast<int>(ci));
    for (int v = 0; v < n; ++v) CHECK(oc.membership[v] == inverse[v]);

    // each clique lands inside at least one community
    for (const auto& cl : cs.cliques) {
      bool housed = false;
      for (const auto& comm : oc.communities)
        housed = housed || std::includes(comm.begin(), comm.end(), cl.begin(),
                                         cl.end());
      CHECK(housed);
    }

    // communities induce connected subgraphs
    for (const auto& comm : oc.communities) {
      std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
      for (auto [s, d, w] : edges) {
        (void)w;
        adj[s][d] = adj[d][s] = true;
      }
      std::vector<VertexId> seen = {comm[0]};
      std::vector<bool> mark(n, false);
      mark[comm[0]] = true;
      for (std::size_t head = 0; head < seen.size(); ++head)
        for (VertexId u : comm)
          if (!mark[u] && adj[seen[head]][u]) {
            mark[u] = true;
            seen.push_back(u);
          }
      CHECK(seen.size() == comm.size());
    }
  }
}

TEST_CASE("output is identical for any worker count") {
  std::mt19937_64 rng(515);
  auto edges = oracle::random_graph(rng, 60, 0.2, false, false, false);
  GraphFrame g = from_edges(60, edges);
  WorkerPool p1(1), p2(2), p4(4);
  KCliqueOptions opt;
  CliqueSet a = enumerate_kcliques(g, p1, opt);
  CliqueSet b = enumerate_kcliques(g, p2, opt);
  CliqueSet c = enumerate_kcliques(g, p4, opt);
  CHECK(a.cliques == b.cliques);
  CHECK(a.cliques == c.cliques);
  CHECK(a.index == b.index);
  OverlappingCommunities oa = run_kcliques(g, p1, opt);
  OverlappingCommunities ob = run_kcliques(g, p4, opt);
  CHECK(oa.communities == ob.communities);
  CHECK(oa.membership == ob.membership);
}
