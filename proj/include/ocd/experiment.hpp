#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ocd/metrics.hpp"
#include "ocd/search.hpp"

namespace ocd {

// Forward and reverse fits of a fixed two-node model (X with marginal
// (.25, .25, .5), Y with cutpoints (0, 1) and effects (1, -1, 1)) on one large
// sample.
struct Fig1Config {
    std::size_t n = 100000;
    std::uint64_t seed = 1;
    FitOptions fit;
};

struct Fig1Result {
    std::size_t n = 0;
    double tv_forward = 0;
    double tv_reverse = 0;
    double bic_forward = 0;
    double bic_reverse = 0;
};

Fig1Result fig1_identifiability(const Fig1Config& config);

// Structure recovery on random DAGs across signal strengths.
struct ShdCurveConfig {
    int p = 10;
    int levels = 3;
    // Defaults to p - 1.
    std::optional<int> edges;
    std::vector<double> sigmas{0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
    std::size_t n = 500;
    int repeats = 5;
    std::uint64_t seed = 1;
    SearchOptions search;
    // Workers across repeats; each search itself runs single-threaded.
    int threads = 1;

    int edge_count() const { return edges.value_or(p - 1); }
};

struct ShdCell {
    double sigma = 0;
    int repeat = 0;
    int shd = 0;
    int true_edges = 0;
    int estimated_edges = 0;
    double bic = 0;
    int iterations = 0;
};

struct ShdSummary {
    double sigma = 0;
    double mean_shd = 0;
    // SHD of the empty graph against the truth, i.e. the true edge count.
    double mean_empty_shd = 0;
};

struct ShdCurveResult {
    std::vector<ShdCell> cells;  // sigma-major, then repeat
    std::vector<ShdSummary> summary;
};

ShdCurveResult shd_curve(const ShdCurveConfig& config);

enum class PairScenario { Bivariate, Confounder };

// Forced decisions on simulated cause-effect pairs over a (sigma, n) grid.
struct PairGridConfig {
    PairScenario scenario = PairScenario::Confounder;
    // Bivariate scenario only; the confounder scenario fixes L = 5.
    int cause_levels = 5;
    int effect_levels = 5;
    std::vector<double> sigmas{0.25, 0.5, 0.75, 1.0, 1.25, 1.5};
    std::vector<std::size_t> ns{100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};
    int repeats = 100;
    std::uint64_t seed = 1;
    FitOptions fit;
    // Present each pair in a random column order so that a method with no
    // signal scores 0.5 regardless of its tie rule.
    bool randomize_orientation = true;
    int threads = 1;
};

struct PairCell {
    double sigma = 0;
    std::size_t n = 0;
    int repeat = 0;
    Direction truth = Direction::Forward;
    PairDecision decision;
};

struct PairSummary {
    double sigma = 0;
    std::size_t n = 0;
    double accuracy = 0;
    // Absent when every repeat had the same truth label.
    std::optional<double> auc;
    int ties = 0;
};

struct PairGridResult {
    std::vector<PairCell> cells;  // sigma-major, then n, then repeat
    std::vector<PairSummary> summary;
};

PairGridResult pair_grid(const PairGridConfig& config);

}  // namespace ocd
