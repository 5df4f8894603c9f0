#include "ocd/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace ocd {

std::optional<LocalScore> ScoreCache::find(NodeId node, const std::vector<NodeId>& parents) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find({node, parents});
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

void ScoreCache::insert(const LocalScore& score) {
    std::unique_lock lock(mutex_);
    table_.insert_or_assign({score.node, score.parents}, score);
}

std::size_t ScoreCache::size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
}

LocalScore local_bic(NodeId node, std::vector<NodeId> parents, const OrdinalDataset& data,
                     const FitOptions& opts, ScoreCache* cache) {
    std::sort(parents.begin(), parents.end());
    if (cache) {
        if (auto hit = cache->find(node, parents)) return *hit;
    }
    const NodeSpec spec = NodeSpec::from_data(node, parents, data, opts.link);
    LocalScore score;
    score.node = node;
    score.parents = std::move(parents);
    try {
        const FittedNodeModel model = fit(spec, data, opts);
        score.loglik = model.loglik;
        score.k = model.num_params;
    } catch (const SeparationError& e) {
        score.loglik = e.boundary_model().loglik;
        score.k = e.boundary_model().num_params;
        score.degenerate = true;
    }
    score.bic = -2.0 * score.loglik + score.k * std::log(static_cast<double>(data.num_rows()));
    if (cache) {
        cache->record_fit();
        cache->insert(score);
    }
    return score;
}

double sum_local_bic(const std::vector<LocalScore>& local) {
    double total = 0;
    for (const LocalScore& s : local) total += s.bic;
    return total;
}

GraphScore global_bic(const Dag& g, const OrdinalDataset& data, const FitOptions& opts,
                      ScoreCache* cache) {
    if (g.num_nodes() != data.num_columns()) {
        throw Error(ErrorKind::NodeCountMismatch,
                    "graph has " + std::to_string(g.num_nodes()) + " nodes, data has " +
                        std::to_string(data.num_columns()) + " columns");
    }
    GraphScore out;
    out.local.reserve(g.num_nodes());
    for (NodeId j = 0; j < g.num_nodes(); ++j) {
        out.local.push_back(local_bic(j, g.parents(j), data, opts, cache));
    }
    out.bic = sum_local_bic(out.local);
    return out;
}

}  // namespace ocd
