#include "comdet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "comdet/error.hpp"
#include "text_util.hpp"

namespace comdet {

using nlohmann::json;

namespace {

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t dot = path.find('.', start);
    if (dot == std::string::npos) dot = path.size();
    parts.push_back(path.substr(start, dot - start));
    start = dot + 1;
  }
  return parts;
}

// Walks a dot path to a textual id: strings pass through, integral numbers
// print in decimal. Anything else (missing, empty, object, float...) fails.
std::optional<std::string> resolve_id(const json& doc,
                                      const std::vector<std::string>& path) {
  const json* cur = &doc;
  for (const auto& key : path) {
    if (!cur->is_object()) return std::nullopt;
    auto it = cur->find(key);
    if (it == cur->end()) return std::nullopt;
    cur = &*it;
  }
  if (cur->is_string()) {
    std::string s = cur->get<std::string>();
    if (s.empty()) return std::nullopt;
    return s;
  }
  if (cur->is_number_unsigned())
    return std::to_string(cur->get<unsigned long long>());
  if (cur->is_number_integer()) return std::to_string(cur->get<long long>());
  return std::nullopt;
}

}  // namespace

TweetParse parse_tweets(const std::string& text, WorkerPool& pool,
                        const TweetFieldPaths& paths) {
  const auto id_path = split_path(paths.id_path);
  const auto user_path = split_path(paths.user_path);
  const auto retweet_path = split_path(paths.retweet_path);

  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    std::string_view line(text.data() + start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = nl + 1;
  }

  TweetParse out = parallel_map_reduce<TweetParse>(
      pool, lines.size(), 0,
      [&](std::size_t begin, std::size_t end) {
        TweetParse part;
        for (std::size_t r = begin; r < end; ++r) {
          json doc = json::parse(lines[r], nullptr, false);
          if (doc.is_discarded()) {
            ++part.skipped;
            continue;
          }
          auto user = resolve_id(doc, user_path);
          if (!user) {
            ++part.skipped;
            continue;
          }
          TweetRecord rec;
          rec.user_id = std::move(*user);
          if (auto id = resolve_id(doc, id_path)) rec.tweet_id = std::move(*id);
          rec.retweeted_user_id = resolve_id(doc, retweet_path);
          part.records.push_back(std::move(rec));
        }
        return part;
      },
      [](TweetParse acc, TweetParse part) {
        acc.records.insert(acc.records.end(),
                           std::make_move_iterator(part.records.begin()),
                           std::make_move_iterator(part.records.end()));
        acc.skipped += part.skipped;
        return acc;
      },
      TweetParse{});

  if (out.records.empty())
    throw InputError("no parseable tweet records (skipped " +
                     std::to_string(out.skipped) + " lines)");
  return out;
}

TweetParse load_tweets(const std::string& file, const TweetFieldPaths& paths) {
  WorkerPool pool(1);
  try {
    return parse_tweets(detail::read_file(file), pool, paths);
  } catch (const InputError& e) {
    throw InputError(file + ": " + e.what());
  }
}

GraphFrame retweet_graph(const std::vector<TweetRecord>& records,
                         int num_partitions) {
  std::vector<std::string> users;
  std::vector<EdgeSpec> edges;
  for (const auto& rec : records) {
    users.push_back(rec.user_id);
    if (rec.retweeted_user_id) {
      users.push_back(*rec.retweeted_user_id);
      edges.push_back({rec.user_id, *rec.retweeted_user_id, 1.0});
    }
  }
  return build_graph(users, edges, Directedness::Directed, num_partitions);
}

std::vector<AuthorshipRecord> load_authorships_csv(const std::string& file) {
  auto rows = detail::parse_csv(detail::read_file(file), file);
  std::size_t r = 0;
  if (!rows.empty() && rows[0].size() == 2) {
    auto lower = [](std::string s) {
      for (char& c : s) c = static_cast<char>(std::tolower(c));
      return s;
    };
    if (lower(rows[0][0]) == "article_id" && lower(rows[0][1]) == "author_id")
      r = 1;
  }
  std::vector<AuthorshipRecord> records;
  std::unordered_map<std::string, std::size_t> by_article;
  for (; r < rows.size(); ++r) {
    const std::string ctx = file + " row " + std::to_string(r);
    if (rows[r].size() != 2)
      throw InputError(ctx + ": expected article_id,author_id");
    const std::string& article = rows[r][0];
    const std::string& author = rows[r][1];
    if (article.empty() || author.empty())
      throw InputError(ctx + ": empty field");
    auto [it, fresh] = by_article.try_emplace(article, records.size());
    if (fresh) records.push_back({article, {}});
    auto& ids = records[it->second].author_ids;
    if (std::find(ids.begin(), ids.end(), author) == ids.end())
      ids.push_back(author);
  }
  return records;
}

GraphFrame collaboration_graph(const std::vector<AuthorshipRecord>& records,
                               int num_partitions) {
  std::vector<std::string> authors;
  std::vector<EdgeSpec> edges;
  for (const auto& rec : records) {
    for (const auto& a : rec.author_ids) authors.push_back(a);
    // pair off a deduplicated copy so a noisy record cannot self-loop
    std::vector<std::string> uniq = rec.author_ids;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (std::size_t i = 0; i < uniq.size(); ++i)
      for (std::size_t j = i + 1; j < uniq.size(); ++j)
        edges.push_back({uniq[i], uniq[j], 1.0});
  }
  return build_graph(authors, edges, Directedness::Undirected, num_partitions);
}

GraphFrame generate_synthetic(const SyntheticSpec& spec, int num_partitions) {
  const std::int64_t n = spec.num_vertices;
  if (n <= 0) throw std::invalid_argument("synthetic graph needs vertices");
  if (spec.num_edges <= 0)
    throw std::invalid_argument("synthetic graph needs a positive edge count");
  const bool directed = spec.directedness == Directedness::Directed;
  const std::int64_t max_edges = directed ? n * (n - 1) : n * (n - 1) / 2;
  if (spec.num_edges > max_edges)
    throw std::invalid_argument(
        "cannot place " + std::to_string(spec.num_edges) +
        " distinct edges on " + std::to_string(n) + " vertices");

  std::mt19937_64 rng(spec.seed);
  std::vector<std::tuple<VertexId, VertexId, double>> rows;
  rows.reserve(spec.num_edges);
  if (spec.num_edges * 2 <= max_edges) {
    // sparse: rejection-sample distinct pairs
    std::unordered_set<std::int64_t> seen;
    while (static_cast<std::int64_t>(rows.size()) < spec.num_edges) {
      auto a = static_cast<VertexId>(rng() % n);
      auto b = static_cast<VertexId>(rng() % n);
      if (a == b) continue;
      if (!directed && a > b) std::swap(a, b);
      if (seen.insert(a * n + b).second) rows.emplace_back(a, b, 1.0);
    }
  } else {
    // dense: shuffle the full pair list and keep a prefix
    std::vector<std::pair<VertexId, VertexId>> all;
    all.reserve(max_edges);
    for (VertexId a = 0; a < n; ++a)
      for (VertexId b = directed ? 0 : a + 1; b < n; ++b)
        if (a != b) all.emplace_back(a, b);
    for (std::int64_t i = 0; i < spec.num_edges; ++i) {
      std::int64_t j = i + static_cast<std::int64_t>(
                               rng() % static_cast<std::uint64_t>(
                                           max_edges - i));
      std::swap(all[i], all[j]);
      rows.emplace_back(all[i].first, all[i].second, 1.0);
    }
  }
  return build_graph_from_ids(spec.num_vertices, rows, spec.directedness,
                              num_partitions);
}

}  // namespace comdet
