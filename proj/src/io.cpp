#include "comdet/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "comdet/error.hpp"
#include "text_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace comdet {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;  // 64 chars always suffice for shortest form
  return std::string(buf, ptr);
}

using detail::csv_field;
using detail::parse_csv;
using detail::parse_double;
using detail::parse_long;
using detail::read_file;
using detail::write_file;

void save_graph(const GraphFrame& g, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory " + dir.string());

  std::string vertices = "id,label\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    vertices += std::to_string(v);
    vertices += ',';
    vertices += csv_field(g.label(v));
    vertices += '\n';
  }
  write_file(dir / "vertices.csv", vertices);

  std::string edges = "src,dst,weight\n";
  const auto& et = g.edges();
  for (std::size_t i = 0; i < et.size(); ++i) {
    edges += std::to_string(et.src[i]);
    edges += ',';
    edges += std::to_string(et.dst[i]);
    edges += ',';
    edges += format_double(et.weight[i]);
    edges += '\n';
  }
  write_file(dir / "edges.csv", edges);

  json manifest{
      {"directedness", g.directed() ? "directed" : "undirected"},
      {"num_vertices", g.num_vertices()},
      {"num_edges", g.num_edges()},
      {"total_weight", g.total_weight()},
  };
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

GraphFrame load_graph(const fs::path& dir, int num_partitions) {
  json manifest;
  try {
    manifest = json::parse(read_file(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw InputError((dir / "manifest.json").string() + ": " + e.what());
  }
  std::string directedness = manifest.value("directedness", "");
  if (directedness != "directed" && directedness != "undirected")
    throw InputError((dir / "manifest.json").string() +
                     ": directedness must be 'directed' or 'undirected'");
  Directedness d = directedness == "directed" ? Directedness::Directed
                                              : Directedness::Undirected;

  auto vrows = parse_csv(read_file(dir / "vertices.csv"), "vertices.csv");
  if (vrows.empty() || vrows[0] != std::vector<std::string>{"id", "label"})
    throw InputError("vertices.csv: expected header id,label");
  VertexTable vt;
  for (std::size_t r = 1; r < vrows.size(); ++r) {
    if (vrows[r].size() != 2)
      throw InputError("vertices.csv row " + std::to_string(r) +
                       ": expected 2 fields");
    long id = parse_long(vrows[r][0], "vertices.csv row " + std::to_string(r));
    if (id != static_cast<long>(r) - 1)
      throw InputError("vertices.csv row " + std::to_string(r) +
                       ": ids must be dense and ascending from 0");
    if (vrows[r][1].empty())
      throw InputError("vertices.csv row " + std::to_string(r) +
                       ": empty label");
    if (vt.intern(vrows[r][1]) != id)
      throw InputError("vertices.csv row " + std::to_string(r) +
                       ": duplicate label '" + vrows[r][1] + "'");
  }

  auto erows = parse_csv(read_file(dir / "edges.csv"), "edges.csv");
  if (erows.empty() ||
      erows[0] != std::vector<std::string>{"src", "dst", "weight"})
    throw InputError("edges.csv: expected header src,dst,weight");
  EdgeTable et;
  for (std::size_t r = 1; r < erows.size(); ++r) {
    std::string ctx = "edges.csv row " + std::to_string(r);
    if (erows[r].size() != 3) throw InputError(ctx + ": expected 3 fields");
    long s = parse_long(erows[r][0], ctx);
    long dst = parse_long(erows[r][1], ctx);
    double w = parse_double(erows[r][2], ctx);
    if (s < 0 || s >= vt.size() || dst < 0 || dst >= vt.size())
      throw InputError(ctx + ": endpoint out of range");
    if (!(w > 0.0)) throw InputError(ctx + ": weight must be positive");
    et.push(static_cast<VertexId>(s), static_cast<VertexId>(dst), w);
  }

  if (manifest.contains("num_vertices") &&
      manifest["num_vertices"].get<long>() != vt.size())
    throw InputError("manifest.json: num_vertices does not match vertices.csv");
  if (manifest.contains("num_edges") &&
      manifest["num_edges"].get<long>() != static_cast<long>(et.size()))
    throw InputError("manifest.json: num_edges does not match edges.csv");

  try {
    return GraphFrame(std::move(vt), std::move(et), d, num_partitions);
  } catch (const std::invalid_argument& e) {
    throw InputError(dir.string() + ": " + e.what());
  }
}

GraphFrame load_edgelist_tsv(const fs::path& file, Directedness directedness,
                             int num_partitions) {
  std::string text = read_file(file);
  std::vector<EdgeSpec> edges;
  std::size_t lineno = 0;
  bool first_data_line = true;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (pos > text.size()) break;
      continue;
    }

    std::vector<std::string_view> fields;
    std::size_t f = 0;
    while (true) {
      std::size_t tab = line.find('\t', f);
      if (tab == std::string_view::npos) {
        fields.push_back(line.substr(f));
        break;
      }
      fields.push_back(line.substr(f, tab - f));
      f = tab + 1;
    }
    std::string ctx = file.filename().string() + " line " + std::to_string(lineno);
    if (fields.size() != 2 && fields.size() != 3)
      throw InputError(ctx + ": expected 2 or 3 tab-separated fields");

    if (first_data_line) {
      first_data_line = false;
      auto lower = [](std::string_view s) {
        std::string out(s);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        return out;
      };
      bool header = lower(fields[0]) == "src" || lower(fields[1]) == "dst" ||
                    (fields.size() == 3 && lower(fields[2]) == "weight");
      if (header) continue;
    }

    EdgeSpec e;
    e.src = std::string(fields[0]);
    e.dst = std::string(fields[1]);
    e.weight = fields.size() == 3 ? parse_double(fields[2], ctx) : 1.0;
    if (e.src.empty() || e.dst.empty())
      throw InputError(ctx + ": empty endpoint");
    if (!(e.weight > 0.0)) throw InputError(ctx + ": weight must be positive");
    edges.push_back(std::move(e));
    if (pos > text.size()) break;
  }
  return build_graph({}, edges, directedness, num_partitions);
}

void save_communities_csv(const fs::path& file, const GraphFrame& g,
                          const std::vector<std::vector<VertexId>>& communities) {
  std::vector<std::pair<std::string_view, int>> rows;
  for (std::size_t c = 0; c < communities.size(); ++c)
    for (VertexId v : communities[c])
      rows.emplace_back(g.label(v), static_cast<int>(c));
  std::sort(rows.begin(), rows.end());
  std::string out = "vertex,community\n";
  for (auto& [label, c] : rows) {
    out += csv_field(label);
    out += ',';
    out += std::to_string(c);
    out += '\n';
  }
  write_file(file, out);
}

std::vector<int> load_partition_csv(const fs::path& file,
                                    const GraphFrame& g) {
  auto rows = parse_csv(read_file(file), file.filename().string());
  if (rows.empty() ||
      rows[0] != std::vector<std::string>{"vertex", "community"})
    throw InputError(file.string() + ": expected header vertex,community");
  std::vector<int> assignment(g.num_vertices(), -1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::string ctx = file.filename().string() + " row " + std::to_string(r);
    if (rows[r].size() != 2) throw InputError(ctx + ": expected 2 fields");
    VertexId v = g.vertices().find(rows[r][0]);
    if (v < 0) throw InputError(ctx + ": unknown vertex '" + rows[r][0] + "'");
    long c = parse_long(rows[r][1], ctx);
    if (c < 0) throw InputError(ctx + ": community ids must be >= 0");
    if (assignment[v] != -1)
      throw InputError(ctx + ": vertex '" + rows[r][0] +
                       "' assigned more than once");
    assignment[v] = static_cast<int>(c);
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (assignment[v] == -1)
      throw InputError(file.string() + ": vertex '" + g.label(v) +
                       "' has no community");
  return assignment;
}

}  // namespace comdet
