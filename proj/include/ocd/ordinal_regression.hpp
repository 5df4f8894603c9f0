#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "ocd/dataset.hpp"
#include "ocd/error.hpp"
#include "ocd/graph.hpp"
#include "ocd/link.hpp"

namespace ocd {

// One node's cumulative-link regression on its parents:
//   Pr(X_j <= l | parents) = F(gamma_l - alpha - sum_k beta_{k, x_k}),
// with gamma_1 = 0 and beta_{k, L_k} = 0 fixed.
struct NodeSpec {
    NodeId node = 0;
    std::vector<NodeId> parents;
    int target_levels = 2;
    std::vector<int> parent_levels;
    LinkKind link = LinkKind::Probit;

    // Levels taken from the dataset's declared level counts.
    static NodeSpec from_data(NodeId node, std::vector<NodeId> parents,
                              const OrdinalDataset& data, LinkKind link);

    // K_j = (L_j - 1) + sum_k (L_k - 1). Also the length of the
    // unconstrained parameter vector.
    int num_params() const;

    // Throws InvalidArgument if the node is its own parent, parents repeat,
    // or a level count is below 2.
    void validate() const;
};

struct NodeParameters {
    double alpha = 0;
    // betas[k] = (beta_{k,1}, ..., beta_{k,L_k - 1}).
    std::vector<std::vector<double>> betas;
    // (gamma_2, ..., gamma_{L_j - 1}); strictly increasing and positive.
    std::vector<double> gammas;
};

// Pr(X_j = l | parent codes), l = 1..L_j, as a vector of length L_j. Throws
// InvalidParentCode for a code outside its parent's range.
std::vector<double> category_probs(const NodeSpec& spec, const NodeParameters& params,
                                   std::span<const int> parent_codes);

// Unconstrained layout: (alpha, betas parent by parent, zeta_2..zeta_{L-1})
// where gamma_2 = exp(zeta_2) and gamma_l = gamma_{l-1} + exp(zeta_l).
Eigen::VectorXd pack_parameters(const NodeSpec& spec, const NodeParameters& params);
NodeParameters unpack_parameters(const NodeSpec& spec, const Eigen::VectorXd& theta);

// -sum_i log Pr(x_ij | x_i,pa(j)) at the unconstrained parameters.
// Throws DimensionMismatch when theta has the wrong length.
double negative_log_likelihood(const NodeSpec& spec, const Eigen::VectorXd& theta,
                               const OrdinalDataset& data);
Eigen::VectorXd nll_gradient(const NodeSpec& spec, const Eigen::VectorXd& theta,
                             const OrdinalDataset& data);
Eigen::MatrixXd nll_hessian(const NodeSpec& spec, const Eigen::VectorXd& theta,
                            const OrdinalDataset& data);

struct FitOptions {
    LinkKind link = LinkKind::Probit;
    int max_iter = 200;
    double tol_grad = 1e-8;
    double tol_nll = 1e-10;
    // Separation guard on every unconstrained coordinate.
    double param_bound = 30;
};

enum class Termination { GradientTolerance, RelativeChange, LineSearchStalled, IterationCap };

std::string to_string(Termination t);

struct FittedNodeModel {
    NodeSpec spec;
    NodeParameters params;
    double loglik = 0;
    int num_params = 0;
    bool converged = false;
    int iterations = 0;
    Termination termination = Termination::IterationCap;
    // NLL at the start and after every accepted iteration.
    std::vector<double> nll_trace;

    std::vector<double> category_probs(std::span<const int> parent_codes) const {
        return ocd::category_probs(spec, params, parent_codes);
    }
};

// Thrown by fit() when the likelihood keeps increasing towards infinity in
// some direction. Carries the model evaluated where the iterate reached the
// parameter bound.
class SeparationError : public Error {
public:
    SeparationError(const std::string& message, FittedNodeModel boundary_model)
        : Error(ErrorKind::SeparationDetected, message),
          boundary_model_(std::move(boundary_model)) {}

    const FittedNodeModel& boundary_model() const noexcept { return boundary_model_; }

private:
    FittedNodeModel boundary_model_;
};

// Maximum-likelihood fit. Throws DegenerateTarget when the target column has
// fewer than two observed levels and SeparationError when the guard trips.
// Levels of a parent that never occur in the data keep beta fixed at 0.
FittedNodeModel fit(const NodeSpec& spec, const OrdinalDataset& data,
                    const FitOptions& opts = {});

}  // namespace ocd
