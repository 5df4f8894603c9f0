#include "ocd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ocd/scoring.hpp"

namespace ocd {

int shd(const Dag& a, const Dag& b) {
    if (a.num_nodes() != b.num_nodes()) {
        throw Error(ErrorKind::NodeCountMismatch, "graphs have different node counts");
    }
    int distance = 0;
    for (NodeId i = 0; i < a.num_nodes(); ++i) {
        for (NodeId j = i + 1; j < a.num_nodes(); ++j) {
            const bool in_a = a.adjacent(i, j);
            const bool in_b = b.adjacent(i, j);
            if (in_a != in_b) {
                ++distance;
            } else if (in_a && a.has_edge(i, j) != b.has_edge(i, j)) {
                ++distance;
            }
        }
    }
    return distance;
}

PairDecision forced_decision(const OrdinalDataset& pair, const FitOptions& opts) {
    if (pair.num_columns() != 2) {
        throw Error(ErrorKind::InvalidArgument, "forced decision needs exactly two columns");
    }
    const double first_root = local_bic(0, {}, pair, opts).bic;
    const double second_root = local_bic(1, {}, pair, opts).bic;
    const double second_given_first = local_bic(1, {0}, pair, opts).bic;
    const double first_given_second = local_bic(0, {1}, pair, opts).bic;

    PairDecision d;
    d.bic_forward = first_root + second_given_first;
    d.bic_backward = second_root + first_given_second;
    d.confidence = d.bic_backward - d.bic_forward;
    d.direction = d.confidence >= 0 ? Direction::Forward : Direction::Backward;
    d.tie = d.confidence == 0;
    return d;
}

double accuracy(std::span<const Direction> decisions, std::span<const Direction> truth) {
    if (decisions.size() != truth.size()) {
        throw Error(ErrorKind::LengthMismatch, "decisions and truth differ in length");
    }
    if (decisions.empty()) throw Error(ErrorKind::LengthMismatch, "no decisions");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < decisions.size(); ++i) correct += decisions[i] == truth[i];
    return static_cast<double>(correct) / static_cast<double>(decisions.size());
}

double auc_ranked(std::span<const double> confidences, std::span<const Direction> truth) {
    if (confidences.size() != truth.size()) {
        throw Error(ErrorKind::LengthMismatch, "confidences and truth differ in length");
    }
    const std::size_t n = confidences.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return confidences[a] < confidences[b]; });
    // Mid-ranks (1-based) over tied groups.
    std::vector<double> rank(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t k = i;
        while (k < n && confidences[order[k]] == confidences[order[i]]) ++k;
        const double mid = 0.5 * static_cast<double>(i + 1 + k);
        for (std::size_t r = i; r < k; ++r) rank[order[r]] = mid;
        i = k;
    }
    double positives = 0;
    double rank_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (truth[i] == Direction::Forward) {
            positives += 1;
            rank_sum += rank[i];
        }
    }
    const double negatives = static_cast<double>(n) - positives;
    if (positives == 0 || negatives == 0) {
        throw Error(ErrorKind::DegenerateLabels, "AUC needs both truth directions present");
    }
    return (rank_sum - positives * (positives + 1) / 2) / (positives * negatives);
}

double total_variation(const JointTable& a, const JointTable& b) {
    if (a.shape != b.shape || a.probs.size() != b.probs.size() || a.probs.size() != a.cells()) {
        throw Error(ErrorKind::ShapeMismatch, "probability tables differ in shape");
    }
    auto check = [](const JointTable& t) {
        double total = 0;
        for (double v : t.probs) {
            if (v < 0) throw Error(ErrorKind::NotNormalized, "negative probability");
            total += v;
        }
        if (std::abs(total - 1) > 1e-9) {
            throw Error(ErrorKind::NotNormalized, "table sums to " + std::to_string(total));
        }
    };
    check(a);
    check(b);
    double l1 = 0;
    for (std::size_t i = 0; i < a.probs.size(); ++i) l1 += std::abs(a.probs[i] - b.probs[i]);
    return 0.5 * l1;
}

}  // namespace ocd
