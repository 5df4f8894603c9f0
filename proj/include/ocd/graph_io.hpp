#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ocd/graph.hpp"

namespace ocd {

using NamedEdge = std::pair<std::string, std::string>;

// Edge-list text format: one `source -> target` per line. Blank lines and
// lines starting with '#' are ignored.
std::vector<NamedEdge> parse_named_edges(std::istream& in);
std::vector<NamedEdge> read_named_edges(const std::filesystem::path& path);

// Resolves names against `names` (column order defines node ids).
Dag dag_from_named_edges(const std::vector<NamedEdge>& edges,
                         const std::vector<std::string>& names);
Dag read_edge_list(const std::filesystem::path& path, const std::vector<std::string>& names);

std::string format_edge_list(const Dag& g, const std::vector<std::string>& names);
void write_edge_list(const std::filesystem::path& path, const Dag& g,
                     const std::vector<std::string>& names);

std::string to_dot(const Dag& g, const std::vector<std::string>& names);

}  // namespace ocd
