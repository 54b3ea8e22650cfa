#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "comdet/error.hpp"
#include "comdet/graph.hpp"
#include "comdet/io.hpp"
#include "oracles.hpp"

using namespace comdet;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static int counter = 0;
  fs::path p = fs::temp_directory_path() /
               ("comdet_io_test_" + std::to_string(++counter));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.5) == "2.5");
  CHECK(format_double(1e300) == "1e+300");
  double third = 1.0 / 3.0;
  CHECK(std::stod(format_double(third)) == third);
}

TEST_CASE("graph save/load round trip is byte-identical") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    bool directed = trial % 2 == 0;
    int n = 2 + static_cast<int>(rng() % 20);
    auto edges = oracle::random_graph(rng, n, 0.3, directed, true, true);
    std::vector<std::tuple<VertexId, VertexId, double>> rows;
    for (auto [s, d, w] : edges) rows.emplace_back(s, d, w);
    GraphFrame g = build_graph_from_ids(
        n, rows, directed ? Directedness::Directed : Directedness::Undirected);

    fs::path d1 = temp_dir(), d2 = temp_dir();
    save_graph(g, d1);
    GraphFrame loaded = load_graph(d1);
    CHECK(loaded.edges() == g.edges());
    CHECK(loaded.directed() == g.directed());
    CHECK(loaded.num_vertices() == g.num_vertices());
    CHECK(loaded.total_weight() == g.total_weight());
    save_graph(loaded, d2);
    for (const char* f : {"vertices.csv", "edges.csv", "manifest.json"})
      CHECK(slurp(d1 / f) == slurp(d2 / f));
    fs::remove_all(d1);
    fs::remove_all(d2);
  }
}

TEST_CASE("labels with commas, quotes and unicode survive the round trip") {
  GraphFrame g = build_graph({"Smith, J.", "says \"hi\"", "naïve"},
                             {{"Smith, J.", "says \"hi\"", 1.5},
                              {"naïve", "Smith, J.", 2.0}},
                             Directedness::Undirected);
  fs::path d = temp_dir();
  save_graph(g, d);
  GraphFrame loaded = load_graph(d);
  CHECK(loaded.label(0) == "Smith, J.");
  CHECK(loaded.label(1) == "says \"hi\"");
  CHECK(loaded.label(2) == "naïve");
  CHECK(loaded.edges() == g.edges());
  fs::remove_all(d);
}

TEST_CASE("load_graph rejects broken directories") {
  fs::path d = temp_dir();
  CHECK_THROWS_AS(load_graph(d / "missing"), InputError);

  write(d / "manifest.json", "{\"directedness\": \"sideways\"}");
  write(d / "vertices.csv", "id,label\n0,a\n");
  write(d / "edges.csv", "src,dst,weight\n");
  CHECK_THROWS_AS(load_graph(d), InputError);

  write(d / "manifest.json", "{\"directedness\": \"undirected\"}");
  write(d / "vertices.csv", "id,label\n5,a\n");
  CHECK_THROWS_AS(load_graph(d), InputError);

  write(d / "vertices.csv", "id,label\n0,a\n1,b\n");
  write(d / "edges.csv", "src,dst,weight\n0,9,1\n");
  CHECK_THROWS_AS(load_graph(d), InputError);

  write(d / "edges.csv", "src,dst,weight\n0,1,0\n");
  CHECK_THROWS_AS(load_graph(d), InputError);

  write(d / "edges.csv", "src,dst,weight\n0,1,nope\n");
  CHECK_THROWS_AS(load_graph(d), InputError);

  write(d / "edges.csv", "src,dst,weight\n1,0,1\n");  // backwards undirected
  CHECK_THROWS_AS(load_graph(d), InputError);

  write(d / "edges.csv", "src,dst,weight\n0,1,1\n");
  write(d / "manifest.json",
        "{\"directedness\": \"undirected\", \"num_edges\": 7}");
  CHECK_THROWS_AS(load_graph(d), InputError);
  fs::remove_all(d);
}

TEST_CASE("edge list parsing: comments, header, default weight") {
  fs::path d = temp_dir();
  write(d / "edges.tsv",
        "# a comment\n"
        "src\tdst\tweight\n"
        "alice\tbob\t2\n"
        "\n"
        "bob\tcarol\n"
        "alice\tbob\t0.5\n");
  GraphFrame g = load_edgelist_tsv(d / "edges.tsv", Directedness::Undirected);
  REQUIRE(g.num_vertices() == 3);
  REQUIRE(g.edges().size() == 2);
  CHECK(g.total_weight() == 3.5);  // parallel alice-bob rows summed
  CHECK(g.label(0) == "alice");

  // headerless and directed
  write(d / "plain.tsv", "1\t2\t3\n2\t1\t1\n");
  GraphFrame h = load_edgelist_tsv(d / "plain.tsv", Directedness::Directed);
  CHECK(h.edges().size() == 2);
  CHECK(h.total_weight() == 4.0);

  write(d / "bad.tsv", "a\tb\tx\n");
  CHECK_THROWS_AS(load_edgelist_tsv(d / "bad.tsv", Directedness::Undirected),
                  InputError);
  write(d / "neg.tsv", "a\tb\t-1\n");
  CHECK_THROWS_AS(load_edgelist_tsv(d / "neg.tsv", Directedness::Undirected),
                  InputError);
  write(d / "short.tsv", "a\n");
  CHECK_THROWS_AS(load_edgelist_tsv(d / "short.tsv", Directedness::Undirected),
                  InputError);
  CHECK_THROWS_AS(load_edgelist_tsv(d / "missing.tsv", Directedness::Undirected),
                  InputError);
  fs::remove_all(d);
}

TEST_CASE("membership csv: sorted, overlap-capable, partition-checked") {
  GraphFrame g = build_graph({"x", "b", "a"}, {{"a", "b", 1.0}, {"b", "x", 1.0}},
                             Directedness::Undirected);
  fs::path d = temp_dir();

  save_communities_csv(d / "comm.csv", g, {{0, 2}, {1, 2}});
  CHECK(slurp(d / "comm.csv") ==
        "vertex,community\n"
        "a,0\n"
        "a,1\n"
        "b,1\n"
        "x,0\n");

  // overlapping membership is not a partition
  CHECK_THROWS_AS(load_partition_csv(d / "comm.csv", g), InputError);

  save_communities_csv(d / "part.csv", g, {{0}, {1, 2}});
  std::vector<int> assign = load_partition_csv(d / "part.csv", g);
  CHECK(assign == std::vector<int>{0, 1, 1});

  write(d / "unknown.csv", "vertex,community\nzz,0\n");
  CHECK_THROWS_AS(load_partition_csv(d / "unknown.csv", g), InputError);
  write(d / "partial.csv", "vertex,community\na,0\n");
  CHECK_THROWS_AS(load_partition_csv(d / "partial.csv", g), InputError);
  write(d / "negative.csv", "vertex,community\na,-1\nb,0\nx,0\n");
  CHECK_THROWS_AS(load_partition_csv(d / "negative.csv", g), InputError);
  write(d / "badheader.csv", "node,community\na,0\n");
  CHECK_THROWS_AS(load_partition_csv(d / "badheader.csv", g), InputError);
  fs::remove_all(d);
}
