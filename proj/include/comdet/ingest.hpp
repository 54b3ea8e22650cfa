#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "comdet/engine.hpp"
#include "comdet/graph.hpp"

namespace comdet {

// One tweet, reduced to what the retweet graph needs. The retweet source is
// set exactly when the record is a retweet.
struct TweetRecord {
  std::string tweet_id;
  std::string user_id;
  std::optional<std::string> retweeted_user_id;
};

// Dot-separated JSON paths locating the fields inside one tweet document.
// The defaults follow the classic Twitter API layout; override for corpora
// with a different shape.
struct TweetFieldPaths {
  std::string id_path = "id";
  std::string user_path = "user.id";
  std::string retweet_path = "retweeted_status.user.id";
};

struct TweetParse {
  std::vector<TweetRecord> records;
  std::size_t skipped = 0;  // malformed lines, counted but not fatal
};

// Parses one JSON document per line. A line is malformed (skipped and
// counted) when it is not valid JSON or the user path does not resolve to a
// non-empty id; a resolvable retweet path marks the record as a retweet.
// Blank lines are ignored. Zero parseable records is an InputError.
TweetParse parse_tweets(const std::string& text, WorkerPool& pool,
                        const TweetFieldPaths& paths = {});
TweetParse load_tweets(const std::string& file,
                       const TweetFieldPaths& paths = {});

// Directed, weighted: every retweet adds 1 to the retweeter -> author edge.
// Users appear as vertices in first-mention order; non-retweeting,
// non-retweeted users stay isolated.
GraphFrame retweet_graph(const std::vector<TweetRecord>& records,
                         int num_partitions = 0);

struct AuthorshipRecord {
  std::string article_id;
  std::vector<std::string> author_ids;
};

// CSV of article_id,author_id rows (header optional); rows are grouped by
// article in first-appearance order and duplicate authors within one
// article are dropped.
std::vector<AuthorshipRecord> load_authorships_csv(const std::string& file);

// Undirected, weighted: each article adds 1 to every unordered pair of its
// authors. Solo authors stay isolated vertices.
GraphFrame collaboration_graph(const std::vector<AuthorshipRecord>& records,
                               int num_partitions = 0);

struct SyntheticSpec {
  VertexId num_vertices = 0;
  std::int64_t num_edges = 0;
  std::uint64_t seed = 0;
  Directedness directedness = Directedness::Undirected;
};

// Uniform simple graph with exactly num_edges distinct unit-weight edges
// (no self-loops), reproducible from the seed. Rejects infeasible counts.
GraphFrame generate_synthetic(const SyntheticSpec& spec,
                              int num_partitions = 0);

}  // namespace comdet
