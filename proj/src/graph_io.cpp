#include "ocd/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ocd/error.hpp"

namespace ocd {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::vector<NamedEdge> parse_named_edges(std::istream& in) {
    std::vector<NamedEdge> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string content = trim(line);
        if (content.empty() || content.front() == '#') continue;
        const auto arrow = content.find("->");
        if (arrow == std::string::npos) {
            throw Error(ErrorKind::ParseError,
                        "edge list line " + std::to_string(line_no) + ": expected 'a -> b'");
        }
        std::string source = trim(std::string_view(content).substr(0, arrow));
        std::string target = trim(std::string_view(content).substr(arrow + 2));
        if (source.empty() || target.empty()) {
            throw Error(ErrorKind::ParseError,
                        "edge list line " + std::to_string(line_no) + ": empty node name");
        }
        out.emplace_back(std::move(source), std::move(target));
    }
    return out;
}

std::vector<NamedEdge> read_named_edges(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    return parse_named_edges(in);
}

Dag dag_from_named_edges(const std::vector<NamedEdge>& edges,
                         const std::vector<std::string>& names) {
    auto index_of = [&](const std::string& name) {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) {
            throw Error(ErrorKind::InvalidNode, "unknown node name '" + name + "'");
        }
        return static_cast<NodeId>(it - names.begin());
    };
    std::vector<Edge> resolved;
    resolved.reserve(edges.size());
    for (const auto& [s, t] : edges) resolved.push_back({index_of(s), index_of(t)});
    return Dag(static_cast<int>(names.size()), resolved);
}

Dag read_edge_list(const std::filesystem::path& path, const std::vector<std::string>& names) {
    return dag_from_named_edges(read_named_edges(path), names);
}

std::string format_edge_list(const Dag& g, const std::vector<std::string>& names) {
    std::ostringstream out;
    for (const Edge& e : g.edges()) out << names.at(e.source) << " -> " << names.at(e.target) << '\n';
    return out.str();
}

void write_edge_list(const std::filesystem::path& path, const Dag& g,
                     const std::vector<std::string>& names) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    out << format_edge_list(g, names);
}

std::string to_dot(const Dag& g, const std::vector<std::string>& names) {
    std::ostringstream out;
    out << "digraph ocd {\n";
    for (const auto& name : names) out << "  \"" << name << "\";\n";
    for (const Edge& e : g.edges()) {
        out << "  \"" << names.at(e.source) << "\" -> \"" << names.at(e.target) << "\";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace ocd
