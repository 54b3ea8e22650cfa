#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "comdet/graph.hpp"

namespace comdet {

// Shortest decimal string that round-trips the value.
std::string format_double(double v);

// Serialized graph directory: vertices.csv (id,label), edges.csv
// (src,dst,weight) and manifest.json (directedness + counts). Saving then
// loading then saving again produces byte-identical files.
void save_graph(const GraphFrame& g, const std::filesystem::path& dir);
GraphFrame load_graph(const std::filesystem::path& dir,
                      int num_partitions = 0);

// Edge-list text format: one `src<TAB>dst<TAB>weight` per line, `#`
// comments ignored, optional header line, two-field lines get weight 1.
GraphFrame load_edgelist_tsv(const std::filesystem::path& file,
                             Directedness directedness,
                             int num_partitions = 0);

// Membership CSV (header `vertex,community`): one row per (vertex,
// community) pair, sorted by label then community id, so overlapping
// covers produce repeated vertex rows. `communities[c]` lists member
// vertex ids of community c.
void save_communities_csv(const std::filesystem::path& file,
                          const GraphFrame& g,
                          const std::vector<std::vector<VertexId>>& communities);

// Reads a membership CSV as a partition: every vertex exactly once.
// Unknown labels, duplicates, or missing vertices are input errors.
std::vector<int> load_partition_csv(const std::filesystem::path& file,
                                    const GraphFrame& g);

}  // namespace comdet
