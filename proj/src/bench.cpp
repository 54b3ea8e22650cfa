#include "comdet/bench.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include <json.hpp>

#include "comdet/error.hpp"
#include "comdet/ingest.hpp"
#include "comdet/io.hpp"
#include "text_util.hpp"

namespace comdet {

using nlohmann::json;

BenchPlan default_plan() {
  BenchPlan plan;
  plan.ladder = {{60, 352}, {250, 8810}, {500, 34986}};
  return plan;
}

BenchPlan load_plan(const std::string& file) {
  json doc = json::parse(detail::read_file(file), nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw InputError(file + ": not a JSON object");
  BenchPlan plan = default_plan();
  try {
    if (doc.contains("ladder")) {
      plan.ladder.clear();
      for (const auto& rung : doc.at("ladder"))
        plan.ladder.push_back({rung.at("vertices").get<VertexId>(),
                               rung.at("edges").get<std::int64_t>()});
    }
    if (doc.contains("workers"))
      plan.worker_counts = doc.at("workers").get<std::vector<int>>();
    if (doc.contains("algorithms")) {
      plan.algorithms.clear();
      for (const auto& name : doc.at("algorithms")) {
        auto algo = algo_from_name(name.get<std::string>());
        if (!algo)
          throw InputError(file + ": unknown algorithm '" +
                           name.get<std::string>() + "'");
        plan.algorithms.push_back(*algo);
      }
    }
    if (doc.contains("repetitions"))
      plan.repetitions = doc.at("repetitions").get<int>();
    if (doc.contains("seed"))
      plan.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("directed") && doc.at("directed").get<bool>())
      plan.directedness = Directedness::Directed;
  } catch (const json::exception& e) {
    throw InputError(file + ": " + e.what());
  }
  if (plan.ladder.empty()) throw InputError(file + ": empty ladder");
  if (plan.repetitions < 1) throw InputError(file + ": repetitions must be >= 1");
  for (int w : plan.worker_counts)
    if (w < 1) throw InputError(file + ": worker counts must be >= 1");
  return plan;
}

std::vector<BenchRow> run_bench(const BenchPlan& plan, std::ostream* progress) {
  std::vector<BenchRow> rows;
  for (std::size_t rung = 0; rung < plan.ladder.size(); ++rung) {
    const auto& scale = plan.ladder[rung];
    SyntheticSpec spec;
    spec.num_vertices = scale.vertices;
    spec.num_edges = scale.edges;
    spec.seed = plan.seed + rung;  // same graph for every cell of the rung
    spec.directedness = plan.directedness;
    std::optional<GraphFrame> g;
    std::string rung_error;
    try {
      g.emplace(generate_synthetic(spec));
    } catch (const std::exception& e) {
      rung_error = e.what();  // marks every cell of the rung
    }
    const std::string dataset = "synthetic-" + std::to_string(scale.vertices) +
                                "v-" + std::to_string(scale.edges) + "e";

    for (Algo algo : plan.algorithms) {
      for (int workers : plan.worker_counts) {
        BenchRow row;
        row.edges = scale.edges;
        row.vertices = scale.vertices;
        row.algo = algo_name(algo);
        row.workers = workers;
        if (!rung_error.empty()) {
          row.error = rung_error;
          rows.push_back(std::move(row));
          continue;
        }
        if (progress)
          *progress << dataset << " " << row.algo << " workers=" << workers
                    << "..." << std::endl;
        try {
          DetectOptions opt;
          opt.algo = algo;
          opt.seed = plan.seed;
          WorkerPool pool(workers);
          std::vector<double> walls;
          for (int rep = 0; rep < plan.repetitions; ++rep) {
            RunReport report = timed_run(*g, dataset, opt, pool);
            walls.push_back(report.wall_s);
            if (rep == 0) {
              row.has_q = report.has_q;
              row.q_final = report.q_final;
              row.communities = report.communities;
            }
          }
          std::sort(walls.begin(), walls.end());
          std::size_t mid = walls.size() / 2;
          row.median_wall_s = walls.size() % 2 == 1
                                  ? walls[mid]
                                  : (walls[mid - 1] + walls[mid]) / 2.0;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "edges,vertices,algo,workers,median_wall_s,q_final,communities,error\n";
  for (const auto& row : rows) {
    out += std::to_string(row.edges) + "," + std::to_string(row.vertices) +
           "," + row.algo + "," + std::to_string(row.workers) + ",";
    if (row.error.empty()) {
      out += format_double(row.median_wall_s);
      out += ",";
      out += row.has_q ? format_double(row.q_final) : std::string();
      out += "," + std::to_string(row.communities) + ",";
    } else {
      out += ",,,";
    }
    out += detail::csv_field(row.error) + "\n";
  }
  return out;
}

}  // namespace comdet
