#include "ocd/search.hpp"

#include <algorithm>
#include <set>

#include "ocd/parallel.hpp"

namespace ocd {

std::string to_string(SearchKind kind) {
    return kind == SearchKind::Greedy ? "greedy" : "exhaustive";
}

SearchKind parse_search_kind(const std::string& text) {
    if (text == "greedy") return SearchKind::Greedy;
    if (text == "exhaustive") return SearchKind::Exhaustive;
    throw Error(ErrorKind::InvalidArgument, "unknown search '" + text + "' (greedy|exhaustive)");
}

std::string to_string(Improvement kind) { return kind == Improvement::Best ? "best" : "first"; }

namespace {

bool within_parent_cap(const Dag& g, const std::optional<int>& max_parents) {
    if (!max_parents) return true;
    for (NodeId j = 0; j < g.num_nodes(); ++j) {
        if (static_cast<int>(g.parents(j).size()) > *max_parents) return false;
    }
    return true;
}

// Parent sets a move gives to the nodes it touches.
struct MoveEffect {
    std::vector<std::pair<NodeId, std::vector<NodeId>>> changes;
};

std::vector<NodeId> with(std::vector<NodeId> set, NodeId j) {
    set.insert(std::lower_bound(set.begin(), set.end(), j), j);
    return set;
}

std::vector<NodeId> without(std::vector<NodeId> set, NodeId j) {
    set.erase(std::lower_bound(set.begin(), set.end(), j));
    return set;
}

MoveEffect effect_of(const Dag& g, const Move& m) {
    const auto [s, t] = m.edge;
    MoveEffect e;
    switch (m.kind) {
        case MoveKind::Add:
            e.changes.emplace_back(t, with(g.parents(t), s));
            break;
        case MoveKind::Delete:
            e.changes.emplace_back(t, without(g.parents(t), s));
            break;
        case MoveKind::Reverse:
            e.changes.emplace_back(t, without(g.parents(t), s));
            e.changes.emplace_back(s, with(g.parents(s), t));
            break;
    }
    return e;
}

class GreedyState {
public:
    GreedyState(const OrdinalDataset& data, const SearchOptions& opts, ScoreCache& cache)
        : data_(data), opts_(opts), cache_(cache) {}

    LocalScore score(NodeId node, const std::vector<NodeId>& parents) const {
        return local_bic(node, parents, data_, opts_.fit, &cache_);
    }

    // Scores every missing (node, parents) pair, possibly in parallel.
    void prefetch(const Dag& g, const std::vector<Move>& moves) const {
        std::set<std::pair<NodeId, std::vector<NodeId>>> needed;
        for (const Move& m : moves) {
            for (auto& change : effect_of(g, m).changes) {
                if (!cache_.find(change.first, change.second)) needed.insert(std::move(change));
            }
        }
        const std::vector<std::pair<NodeId, std::vector<NodeId>>> work(needed.begin(), needed.end());
        parallel_for(work.size(), opts_.threads,
                     [&](std::size_t i) { score(work[i].first, work[i].second); });
    }

    // Global BIC after the move, summed in node order so it is bit-identical
    // to global_bic() on the resulting graph.
    double candidate_bic(const Dag& g, const Move& m, const std::vector<double>& local) const {
        std::vector<double> next = local;
        for (const auto& [node, parents] : effect_of(g, m).changes) next[node] = score(node, parents).bic;
        double total = 0;
        for (double v : next) total += v;
        return total;
    }

private:
    const OrdinalDataset& data_;
    const SearchOptions& opts_;
    ScoreCache& cache_;
};

}  // namespace

DiscoveryResult exhaustive_search(const OrdinalDataset& data, const SearchOptions& opts,
                                  ScoreCache* cache) {
    const auto graphs = enumerate_dags(data.num_columns());
    ScoreCache local_cache;
    ScoreCache& memo = cache ? *cache : local_cache;
    const std::size_t fits_before = memo.fresh_fits();

    DiscoveryResult result;
    std::optional<GraphScore> best;
    for (const Dag& g : graphs) {
        if (!within_parent_cap(g, opts.max_parents)) continue;
        GraphScore s = global_bic(g, data, opts.fit, &memo);
        ++result.graphs_evaluated;
        if (!best || s.bic < best->bic) {
            best = std::move(s);
            result.graph = g;
        }
    }
    result.bic = best->bic;
    result.local_scores = std::move(best->local);
    result.score_evaluations = memo.fresh_fits() - fits_before;
    return result;
}

DiscoveryResult greedy_search(const OrdinalDataset& data, const Dag& initial,
                              const SearchOptions& opts, ScoreCache* cache) {
    if (initial.num_nodes() != data.num_columns()) {
        throw Error(ErrorKind::NodeCountMismatch, "initial graph and data disagree in size");
    }
    ScoreCache local_cache;
    ScoreCache& memo = cache ? *cache : local_cache;
    const std::size_t fits_before = memo.fresh_fits();
    GreedyState state(data, opts, memo);

    DiscoveryResult result;
    result.graph = initial;
    GraphScore current = global_bic(initial, data, opts.fit, &memo);
    ++result.graphs_evaluated;

    while (true) {
        const Dag& g = result.graph;
        std::vector<double> local(current.local.size());
        std::transform(current.local.begin(), current.local.end(), local.begin(),
                       [](const LocalScore& s) { return s.bic; });

        const auto moves = legal_moves(g, opts.max_parents);
        const std::size_t fits_at_start = memo.fresh_fits();
        std::optional<Move> chosen;
        double chosen_bic = current.bic;
        if (opts.improvement == Improvement::Best) {
            state.prefetch(g, moves);
            for (const Move& m : moves) {
                const double bic = state.candidate_bic(g, m, local);
                ++result.graphs_evaluated;
                if (bic < chosen_bic) {
                    chosen = m;
                    chosen_bic = bic;
                }
            }
        } else {
            for (const Move& m : moves) {
                const double bic = state.candidate_bic(g, m, local);
                ++result.graphs_evaluated;
                if (bic < current.bic) {
                    chosen = m;
                    chosen_bic = bic;
                    break;
                }
            }
        }
        result.fresh_fits_per_iteration.push_back(memo.fresh_fits() - fits_at_start);
        if (!chosen) break;

        result.graph = apply_move(g, *chosen);
        result.moves_taken.push_back(*chosen);
        ++result.iterations;
        current = global_bic(result.graph, data, opts.fit, &memo);
    }

    result.bic = current.bic;
    result.local_scores = std::move(current.local);
    result.score_evaluations = memo.fresh_fits() - fits_before;
    return result;
}

}  // namespace ocd
