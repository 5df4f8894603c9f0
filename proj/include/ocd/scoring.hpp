#pragma once

#include <atomic>
#include <map>
#include <optional>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "ocd/dataset.hpp"
#include "ocd/graph.hpp"
#include "ocd/ordinal_regression.hpp"

namespace ocd {

// BIC contribution of one node given its parent set. Lower is better.
struct LocalScore {
    NodeId node = 0;
    std::vector<NodeId> parents;  // sorted
    double bic = 0;
    double loglik = 0;
    int k = 0;
    // The fit hit the separation guard; loglik is taken at the bound.
    bool degenerate = false;

    bool operator==(const LocalScore&) const = default;
};

// Memo table keyed by (node, sorted parent set). Bound to one dataset and one
// set of fit options; reuse across different data gives wrong answers.
// Safe for concurrent lookups and insertions.
class ScoreCache {
public:
    std::optional<LocalScore> find(NodeId node, const std::vector<NodeId>& parents) const;
    void insert(const LocalScore& score);

    std::size_t size() const;
    // Number of local scores computed (not served from the table).
    std::size_t fresh_fits() const noexcept { return fresh_fits_.load(); }
    void record_fit() noexcept { ++fresh_fits_; }

private:
    mutable std::shared_mutex mutex_;
    std::map<std::pair<NodeId, std::vector<NodeId>>, LocalScore> table_;
    std::atomic<std::size_t> fresh_fits_{0};
};

// -2 loglik + K log n for `node` on `parents` (any order). Consults and fills
// `cache` when given. A separated fit yields a finite score at the parameter
// bound with degenerate = true; DegenerateTarget propagates.
LocalScore local_bic(NodeId node, std::vector<NodeId> parents, const OrdinalDataset& data,
                     const FitOptions& opts, ScoreCache* cache = nullptr);

struct GraphScore {
    double bic = 0;
    std::vector<LocalScore> local;  // indexed by node
};

// Sum of the local scores, accumulated in node order.
double sum_local_bic(const std::vector<LocalScore>& local);

// Throws NodeCountMismatch when the graph and data disagree in size.
GraphScore global_bic(const Dag& g, const OrdinalDataset& data, const FitOptions& opts,
                      ScoreCache* cache = nullptr);

}  // namespace ocd
