#pragma once

#include <string>
#include <vector>

#include "ocd/dataset.hpp"
#include "ocd/graph.hpp"
#include "ocd/rng.hpp"

namespace ocd::testing {

inline OrdinalDataset make_dataset(std::vector<std::vector<int>> columns, std::vector<int> levels = {}) {
    std::vector<std::string> names;
    for (std::size_t j = 0; j < columns.size(); ++j) names.push_back("V" + std::to_string(j + 1));
    if (levels.empty()) {
        for (const auto& c : columns) levels.push_back(*std::max_element(c.begin(), c.end()));
    }
    return OrdinalDataset(std::move(names), std::move(levels), std::move(columns));
}

inline Dag make_dag(int p, std::vector<Edge> edges) { return Dag(p, edges); }

// Independent cycle check by repeated removal of sink nodes.
inline bool brute_force_acyclic(int p, const std::vector<Edge>& edges) {
    std::vector<bool> removed(p, false);
    for (int round = 0; round < p; ++round) {
        bool progressed = false;
        for (int v = 0; v < p; ++v) {
            if (removed[v]) continue;
            bool has_out = false;
            for (const Edge& e : edges) {
                if (e.source == v && !removed[e.target]) has_out = true;
            }
            if (!has_out) {
                removed[v] = true;
                progressed = true;
            }
        }
        if (!progressed) break;
    }
    return std::all_of(removed.begin(), removed.end(), [](bool r) { return r; });
}

// Uniform columns of codes, independent of each other.
inline OrdinalDataset uniform_dataset(std::size_t n, std::vector<int> levels, Rng& rng) {
    std::vector<std::vector<int>> columns;
    for (int L : levels) {
        std::vector<int> c(n);
        for (auto& v : c) v = static_cast<int>(rng.uniform_index(L)) + 1;
        columns.push_back(std::move(c));
    }
    return make_dataset(std::move(columns), levels);
}

}  // namespace ocd::testing
