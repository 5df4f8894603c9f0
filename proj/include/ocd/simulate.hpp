#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ocd/dataset.hpp"
#include "ocd/graph.hpp"
#include "ocd/joint_table.hpp"
#include "ocd/ordinal_regression.hpp"
#include "ocd/rng.hpp"

namespace ocd {

// Data-generating ordinal Bayesian network. specs[j].parents equals
// graph.parents(j); params are in the normalized form (gamma_1 = 0).
struct GroundTruthModel {
    Dag graph{1};
    std::vector<std::string> names;
    std::vector<int> levels;
    LinkKind link = LinkKind::Probit;
    std::vector<NodeSpec> specs;
    std::vector<NodeParameters> params;
};

// Default column names X1..Xp.
std::vector<std::string> default_names(int p);

// Uniform random topological order, then `num_edges` of the p(p-1)/2
// order-consistent pairs chosen uniformly without replacement.
// Throws TooManyEdges when num_edges > p(p-1)/2.
Dag random_dag(int p, int num_edges, Rng& rng);

struct ParameterDraw {
    double sigma = 1.0;
    LinkKind link = LinkKind::Probit;
    // Ancestor draws used to place the balanced cutpoints.
    std::size_t presample = 10000;
    // One beta vector, drawn once, reused on every edge (all levels equal).
    bool shared_effects = false;
};

// Latent-scale thresholds c_1 < ... < c_{L-1} with Pr(X_j <= l) = l / L_j
// under the mixture of F(c - eta) over the predictor sample `etas`.
std::vector<double> balanced_thresholds(std::span<const double> etas, int levels, LinkKind link);

// Thresholds for node j given `partial`, whose nodes before j in topological
// order are complete and whose node j has alpha and betas drawn. Ancestor
// configurations come from a fresh ancestral presample drawn from `rng`.
std::vector<double> balanced_cutpoints(NodeId j, const GroundTruthModel& partial, Rng& rng,
                                       std::size_t presample = 10000);

// alpha and free betas iid N(0, sigma^2); cutpoints balanced per node. Node j
// draws from rng.split(j); the presample uses rng.split(p + 1).
GroundTruthModel draw_parameters(const Dag& g, const std::vector<int>& levels,
                                 const ParameterDraw& how, Rng& rng);

// n iid rows by ancestral sampling in topological order.
OrdinalDataset sample(const GroundTruthModel& model, std::size_t n, Rng& rng);

// Exact joint distribution by enumerating every configuration.
JointTable joint_distribution(const GroundTruthModel& model);

// Empirical cell frequencies of the dataset.
JointTable empirical_joint(const OrdinalDataset& data);

// Two-node model X -> Y written with a marginal for X and, for Y, per-level
// effects (beta_1..beta_S, no intercept) and cutpoints (gamma_1 = 0 first).
GroundTruthModel two_node_model(std::span<const double> root_probs,
                                std::span<const double> effects,
                                std::span<const double> cutpoints, LinkKind link);

// Model assembled from fitted node models on `graph`.
GroundTruthModel model_from_fits(const Dag& graph, const std::vector<std::string>& names,
                                 const std::vector<FittedNodeModel>& fits);

struct PairSample {
    OrdinalDataset data;
    // Index of the true cause in `data` (the effect is the other column).
    int cause = 0;
    GroundTruthModel model;
};

// X1 -> X2 with the generator above, S and L levels.
PairSample bivariate_scenario(int cause_levels, int effect_levels, double sigma, std::size_t n,
                              Rng& rng, LinkKind link = LinkKind::Probit);

// X3 -> X1, X3 -> X2, X1 -> X2 with L = 5 and one effect vector shared by all
// three edges; X3 is dropped from the returned data, truth is X1 -> X2.
PairSample confounder_scenario(double sigma, std::size_t n, Rng& rng,
                               LinkKind link = LinkKind::Probit);

}  // namespace ocd
