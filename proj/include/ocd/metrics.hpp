#pragma once

#include <span>
#include <vector>

#include "ocd/dataset.hpp"
#include "ocd/graph.hpp"
#include "ocd/joint_table.hpp"
#include "ocd/ordinal_regression.hpp"

namespace ocd {

// Structural Hamming distance: pairs adjacent in exactly one graph plus pairs
// adjacent in both with opposite orientation, one unit each.
int shd(const Dag& a, const Dag& b);

enum class Direction { Forward, Backward };

// Forward means first column -> second column.
struct PairDecision {
    Direction direction = Direction::Forward;
    // BIC(second -> first) - BIC(first -> second); positive favours forward.
    double confidence = 0;
    // confidence was exactly 0 and the forward default was taken.
    bool tie = false;
    double bic_forward = 0;
    double bic_backward = 0;
};

// Scores both two-node causal models on a two-column dataset.
PairDecision forced_decision(const OrdinalDataset& pair, const FitOptions& opts);

double accuracy(std::span<const Direction> decisions, std::span<const Direction> truth);

// ROC AUC of the signed confidences for the truth-forward class (Mann-Whitney
// with ties counted one half). Throws DegenerateLabels if one class is empty.
double auc_ranked(std::span<const double> confidences, std::span<const Direction> truth);

// Half the L1 distance. Throws ShapeMismatch / NotNormalized (1e-9).
double total_variation(const JointTable& a, const JointTable& b);

}  // namespace ocd
