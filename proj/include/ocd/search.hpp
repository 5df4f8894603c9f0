#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ocd/dataset.hpp"
#include "ocd/graph.hpp"
#include "ocd/ordinal_regression.hpp"
#include "ocd/scoring.hpp"

namespace ocd {

enum class SearchKind { Greedy, Exhaustive };
// Best: apply the move with the largest BIC decrease each iteration.
// First: apply the first strictly improving move in canonical order.
enum class Improvement { Best, First };

std::string to_string(SearchKind kind);
SearchKind parse_search_kind(const std::string& text);
std::string to_string(Improvement kind);

struct SearchOptions {
    FitOptions fit;
    std::optional<int> max_parents;
    Improvement improvement = Improvement::Best;
    int threads = 1;
};

struct DiscoveryResult {
    Dag graph{1};
    double bic = 0;
    std::vector<LocalScore> local_scores;
    int iterations = 0;
    std::vector<Move> moves_taken;
    // Local-score fits actually computed (cache misses) during the search.
    std::size_t score_evaluations = 0;
    std::size_t graphs_evaluated = 0;
    // Fresh fits triggered while scoring the candidates of each iteration.
    std::vector<std::size_t> fresh_fits_per_iteration;
};

// Global BIC minimizer over every DAG (p <= 4, else TooManyNodes). Ties go to
// the canonically smallest graph. Graphs violating max_parents are skipped.
DiscoveryResult exhaustive_search(const OrdinalDataset& data, const SearchOptions& opts,
                                  ScoreCache* cache = nullptr);

// Hill climbing over single-edge additions, deletions and reversals from
// `initial` until no move strictly lowers the BIC.
DiscoveryResult greedy_search(const OrdinalDataset& data, const Dag& initial,
                              const SearchOptions& opts, ScoreCache* cache = nullptr);

}  // namespace ocd
