#include "ocd/ordinal_regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ocd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Rows sharing the same target and parent codes, collapsed into one weighted
// term of the likelihood.
struct Pattern {
    int target = 1;
    std::vector<int> eta_terms;  // parameter indices entering the linear predictor
    double weight = 0;
};

class NodeObjective {
public:
    NodeObjective(const NodeSpec& spec, const OrdinalDataset& data) : spec_(spec) {
        spec_.validate();
        const int p = data.num_columns();
        auto check_column = [&](NodeId j, int levels) {
            if (j < 0 || j >= p) {
                throw Error(ErrorKind::InvalidNode, "node " + std::to_string(j) +
                                                        " is not a dataset column");
            }
            if (data.levels(j) > levels) {
                throw Error(ErrorKind::ValidationError,
                            "column '" + data.names()[j] + "' has more levels than the spec");
            }
        };
        check_column(spec_.node, spec_.target_levels);
        for (std::size_t k = 0; k < spec_.parents.size(); ++k) {
            check_column(spec_.parents[k], spec_.parent_levels[k]);
        }

        dim_ = spec_.num_params();
        zeta_offset_ = dim_ - (spec_.target_levels - 2);
        std::vector<int> beta_offset(spec_.parents.size());
        int offset = 1;
        for (std::size_t k = 0; k < spec_.parents.size(); ++k) {
            beta_offset[k] = offset;
            offset += spec_.parent_levels[k] - 1;
        }

        const std::size_t n = data.num_rows();
        const std::size_t m = spec_.parents.size();
        std::vector<std::span<const int>> cols;
        cols.push_back(data.column(spec_.node));
        for (NodeId k : spec_.parents) cols.push_back(data.column(k));

        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        auto row_less = [&](std::size_t a, std::size_t b) {
            for (const auto& c : cols) {
                if (c[a] != c[b]) return c[a] < c[b];
            }
            return false;
        };
        std::sort(order.begin(), order.end(), row_less);

        target_counts_.assign(spec_.target_levels, 0);
        observed_.assign(dim_, 1);
        std::vector<std::uint8_t> level_seen(dim_, 0);
        for (std::size_t r = 0; r < n;) {
            std::size_t next = r + 1;
            while (next < n && !row_less(order[r], order[next])) ++next;
            const std::size_t row = order[r];
            Pattern pat;
            pat.target = cols[0][row];
            pat.weight = static_cast<double>(next - r);
            pat.eta_terms.push_back(0);
            for (std::size_t k = 0; k < m; ++k) {
                const int code = cols[k + 1][row];
                if (code < spec_.parent_levels[k]) {
                    pat.eta_terms.push_back(beta_offset[k] + code - 1);
                    level_seen[beta_offset[k] + code - 1] = 1;
                }
            }
            target_counts_[pat.target - 1] += next - r;
            patterns_.push_back(std::move(pat));
            r = next;
        }
        for (std::size_t k = 0; k < m; ++k) {
            for (int h = 0; h < spec_.parent_levels[k] - 1; ++h) {
                observed_[beta_offset[k] + h] = level_seen[beta_offset[k] + h];
            }
        }
    }

    int dim() const { return dim_; }
    const std::vector<std::size_t>& target_counts() const { return target_counts_; }
    // 0 for beta coefficients of parent levels absent from the data.
    const std::vector<std::uint8_t>& observed() const { return observed_; }

    void check_dim(const Eigen::VectorXd& theta) const {
        if (theta.size() != dim_) {
            throw Error(ErrorKind::DimensionMismatch,
                        "parameter vector has length " + std::to_string(theta.size()) +
                            ", expected " + std::to_string(dim_));
        }
    }

    // gamma[l] for l = 0..L with gamma[0] = -inf, gamma[1] = 0, gamma[L] = +inf.
    std::vector<double> cutpoints(const Eigen::VectorXd& theta) const {
        const int L = spec_.target_levels;
        std::vector<double> gamma(L + 1);
        gamma[0] = -kInf;
        gamma[1] = 0;
        for (int l = 2; l < L; ++l) gamma[l] = gamma[l - 1] + std::exp(theta[zeta_offset_ + l - 2]);
        gamma[L] = kInf;
        return gamma;
    }

    double value(const Eigen::VectorXd& theta) const {
        const auto gamma = cutpoints(theta);
        const int L = spec_.target_levels;
        double nll = 0;
        for (const Pattern& pat : patterns_) {
            double eta = 0;
            for (int idx : pat.eta_terms) eta += theta[idx];
            const double hi = pat.target < L ? gamma[pat.target] - eta : kInf;
            const double lo = pat.target > 1 ? gamma[pat.target - 1] - eta : -kInf;
            nll -= pat.weight * log_interval_probability(spec_.link, lo, hi);
        }
        return nll;
    }

    // Value, gradient and (optionally) Hessian with respect to theta.
    double derivatives(const Eigen::VectorXd& theta, Eigen::VectorXd& grad,
                       Eigen::MatrixXd* hess) const {
        const auto gamma = cutpoints(theta);
        const int L = spec_.target_levels;
        const LinkKind link = spec_.link;
        // Accumulate in natural coordinates: (alpha, betas, gamma_2..gamma_{L-1}).
        Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
        Eigen::MatrixXd h;
        if (hess) h = Eigen::MatrixXd::Zero(dim_, dim_);
        double nll = 0;
        for (const Pattern& pat : patterns_) {
            const double w = pat.weight;
            double eta = 0;
            for (int idx : pat.eta_terms) eta += theta[idx];
            const int l = pat.target;
            const double hi = l < L ? gamma[l] - eta : kInf;
            const double lo = l > 1 ? gamma[l - 1] - eta : -kInf;
            const double log_p = log_interval_probability(link, lo, hi);
            nll -= w * log_p;

            const bool hi_finite = l < L;
            const bool lo_finite = l > 1;
            const double r_hi = hi_finite ? std::exp(link_log_pdf(link, hi) - log_p) : 0.0;
            const double r_lo = lo_finite ? std::exp(link_log_pdf(link, lo) - log_p) : 0.0;
            const int up = (l >= 2 && l <= L - 1) ? zeta_offset_ + l - 2 : -1;
            const int down = (l - 1 >= 2) ? zeta_offset_ + l - 3 : -1;

            const double g_eta = w * (r_hi - r_lo);
            for (int idx : pat.eta_terms) g[idx] += g_eta;
            if (up >= 0) g[up] -= w * r_hi;
            if (down >= 0) g[down] += w * r_lo;

            if (!hess) continue;
            const double hh = hi_finite ? w * (r_hi * r_hi - link_pdf_slope(link, hi) * r_hi) : 0.0;
            const double ll = lo_finite ? w * (r_lo * r_lo + link_pdf_slope(link, lo) * r_lo) : 0.0;
            const double hl = -w * r_hi * r_lo;
            const double h_ee = hh + 2 * hl + ll;
            const double h_eu = -(hh + hl);
            const double h_ed = -(hl + ll);
            for (int a : pat.eta_terms) {
                for (int b : pat.eta_terms) h(a, b) += h_ee;
                if (up >= 0) {
                    h(a, up) += h_eu;
                    h(up, a) += h_eu;
                }
                if (down >= 0) {
                    h(a, down) += h_ed;
                    h(down, a) += h_ed;
                }
            }
            if (up >= 0) h(up, up) += hh;
            if (down >= 0) h(down, down) += ll;
            if (up >= 0 && down >= 0) {
                h(up, down) += hl;
                h(down, up) += hl;
            }
        }

        // Chain rule to zeta: dgamma_m / dzeta_i = exp(zeta_i) for i <= m.
        const int nz = L - 2;
        grad = g;
        if (nz > 0) {
            Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nz, nz);
            for (int m = 0; m < nz; ++m) {
                for (int i = 0; i <= m; ++i) jac(m, i) = std::exp(theta[zeta_offset_ + i]);
            }
            const Eigen::VectorXd g_gamma = g.tail(nz);
            grad.tail(nz) = jac.transpose() * g_gamma;
            if (hess) {
                const int nb = zeta_offset_;
                Eigen::MatrixXd out(dim_, dim_);
                out.topLeftCorner(nb, nb) = h.topLeftCorner(nb, nb);
                out.topRightCorner(nb, nz) = h.topRightCorner(nb, nz) * jac;
                out.bottomLeftCorner(nz, nb) = out.topRightCorner(nb, nz).transpose();
                out.bottomRightCorner(nz, nz) = jac.transpose() * h.bottomRightCorner(nz, nz) * jac;
                out.bottomRightCorner(nz, nz).diagonal() += grad.tail(nz);
                h = std::move(out);
            }
        }
        if (hess) *hess = std::move(h);
        return nll;
    }

private:
    NodeSpec spec_;
    int dim_ = 0;
    int zeta_offset_ = 0;
    std::vector<Pattern> patterns_;
    std::vector<std::size_t> target_counts_;
    std::vector<std::uint8_t> observed_;
};

// Newton direction with eigenvalues replaced by max(|lambda|, floor), so the
// step is a descent direction even where the Hessian is indefinite or
// singular (collinear parents, unobserved reference levels).
Eigen::VectorXd modified_newton_direction(const Eigen::MatrixXd& hess, const Eigen::VectorXd& grad) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess);
    if (eig.info() != Eigen::Success) return -grad;
    const Eigen::VectorXd& values = eig.eigenvalues();
    const double scale = values.cwiseAbs().maxCoeff();
    const double floor = std::max(1e-10 * scale, 1e-12);
    const Eigen::VectorXd coeffs = eig.eigenvectors().transpose() * grad;
    Eigen::VectorXd scaled(coeffs.size());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
        scaled[i] = coeffs[i] / std::max(std::abs(values[i]), floor);
    }
    return -(eig.eigenvectors() * scaled);
}

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

NodeSpec NodeSpec::from_data(NodeId node, std::vector<NodeId> parents,
                             const OrdinalDataset& data, LinkKind link) {
    NodeSpec spec;
    spec.node = node;
    spec.target_levels = data.levels(node);
    for (NodeId k : parents) spec.parent_levels.push_back(data.levels(k));
    spec.parents = std::move(parents);
    spec.link = link;
    return spec;
}

int NodeSpec::num_params() const {
    int k = target_levels - 1;
    for (int levels : parent_levels) k += levels - 1;
    return k;
}

void NodeSpec::validate() const {
    if (target_levels < 2) throw Error(ErrorKind::InvalidArgument, "target needs >= 2 levels");
    if (parents.size() != parent_levels.size()) {
        throw Error(ErrorKind::InvalidArgument, "parent ids and parent levels disagree in count");
    }
    for (std::size_t k = 0; k < parents.size(); ++k) {
        if (parents[k] == node) throw Error(ErrorKind::InvalidArgument, "node is its own parent");
        if (parent_levels[k] < 2) {
            throw Error(ErrorKind::InvalidArgument, "parent needs >= 2 levels");
        }
        for (std::size_t k2 = k + 1; k2 < parents.size(); ++k2) {
            if (parents[k] == parents[k2]) {
                throw Error(ErrorKind::InvalidArgument, "duplicate parent id");
            }
        }
    }
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::GradientTolerance: return "gradient_tolerance";
        case Termination::RelativeChange: return "relative_change";
        case Termination::LineSearchStalled: return "line_search_stalled";
        case Termination::IterationCap: return "iteration_cap";
    }
    return "unknown";
}

std::vector<double> category_probs(const NodeSpec& spec, const NodeParameters& params,
                                   std::span<const int> parent_codes) {
    if (parent_codes.size() != spec.parents.size()) {
        throw Error(ErrorKind::InvalidParentCode, "expected one code per parent");
    }
    double eta = params.alpha;
    for (std::size_t k = 0; k < parent_codes.size(); ++k) {
        const int code = parent_codes[k];
        if (code < 1 || code > spec.parent_levels[k]) {
            throw Error(ErrorKind::InvalidParentCode,
                        "parent code " + std::to_string(code) + " outside 1.." +
                            std::to_string(spec.parent_levels[k]));
        }
        if (code < spec.parent_levels[k]) eta += params.betas.at(k).at(code - 1);
    }
    const int L = spec.target_levels;
    std::vector<double> probs(L);
    double lo = -kInf;
    for (int l = 1; l <= L; ++l) {
        const double cut = l == 1 ? 0.0 : (l == L ? kInf : params.gammas.at(l - 2));
        const double hi = cut - eta;
        probs[l - 1] = std::exp(log_interval_probability(spec.link, lo, hi));
        lo = hi;
    }
    return probs;
}

Eigen::VectorXd pack_parameters(const NodeSpec& spec, const NodeParameters& params) {
    Eigen::VectorXd theta(spec.num_params());
    int i = 0;
    theta[i++] = params.alpha;
    for (std::size_t k = 0; k < spec.parents.size(); ++k) {
        if (params.betas.at(k).size() != static_cast<std::size_t>(spec.parent_levels[k] - 1)) {
            throw Error(ErrorKind::DimensionMismatch, "beta vector has the wrong length");
        }
        for (double b : params.betas[k]) theta[i++] = b;
    }
    if (params.gammas.size() != static_cast<std::size_t>(spec.target_levels - 2)) {
        throw Error(ErrorKind::DimensionMismatch, "cutpoint vector has the wrong length");
    }
    double prev = 0;
    for (double g : params.gammas) {
        if (!(g > prev)) {
            throw Error(ErrorKind::InvalidArgument, "cutpoints must be positive and increasing");
        }
        theta[i++] = std::log(g - prev);
        prev = g;
    }
    return theta;
}

NodeParameters unpack_parameters(const NodeSpec& spec, const Eigen::VectorXd& theta) {
    if (theta.size() != spec.num_params()) {
        throw Error(ErrorKind::DimensionMismatch, "parameter vector has the wrong length");
    }
    NodeParameters params;
    int i = 0;
    params.alpha = theta[i++];
    for (int levels : spec.parent_levels) {
        params.betas.emplace_back(theta.data() + i, theta.data() + i + levels - 1);
        i += levels - 1;
    }
    double gamma = 0;
    for (int l = 2; l < spec.target_levels; ++l) {
        gamma += std::exp(theta[i++]);
        params.gammas.push_back(gamma);
    }
    return params;
}

double negative_log_likelihood(const NodeSpec& spec, const Eigen::VectorXd& theta,
                               const OrdinalDataset& data) {
    NodeObjective objective(spec, data);
    objective.check_dim(theta);
    return objective.value(theta);
}

Eigen::VectorXd nll_gradient(const NodeSpec& spec, const Eigen::VectorXd& theta,
                             const OrdinalDataset& data) {
    NodeObjective objective(spec, data);
    objective.check_dim(theta);
    Eigen::VectorXd grad;
    objective.derivatives(theta, grad, nullptr);
    return grad;
}

Eigen::MatrixXd nll_hessian(const NodeSpec& spec, const Eigen::VectorXd& theta,
                            const OrdinalDataset& data) {
    NodeObjective objective(spec, data);
    objective.check_dim(theta);
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    objective.derivatives(theta, grad, &hess);
    return hess;
}

FittedNodeModel fit(const NodeSpec& spec, const OrdinalDataset& data, const FitOptions& opts) {
    NodeObjective objective(spec, data);
    const int dim = objective.dim();
    const int L = spec.target_levels;

    const auto& counts = objective.target_counts();
    const auto observed_levels = std::count_if(counts.begin(), counts.end(),
                                               [](std::size_t c) { return c > 0; });
    if (observed_levels < 2) {
        throw Error(ErrorKind::DegenerateTarget,
                    "target '" + data.names()[spec.node] + "' has fewer than 2 observed levels");
    }

    // Saturated start: cutpoints reproduce the empirical cumulative proportions
    // (half-count smoothing only when a level is empty).
    const bool any_empty = std::any_of(counts.begin(), counts.end(),
                                       [](std::size_t c) { return c == 0; });
    const double pseudo = any_empty ? 0.5 : 0.0;
    const double total = static_cast<double>(data.num_rows()) + pseudo * L;
    std::vector<double> thresholds(L - 1);
    double cum = 0;
    for (int l = 0; l < L - 1; ++l) {
        cum += static_cast<double>(counts[l]) + pseudo;
        thresholds[l] = link_quantile(spec.link, cum / total);
    }
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(dim);
    theta[0] = -thresholds[0];
    for (int l = 2; l < L; ++l) {
        theta[dim - (L - 2) + (l - 2)] = std::log(thresholds[l - 1] - thresholds[l - 2]);
    }

    const auto& observed = objective.observed();
    auto mask = [&](Eigen::VectorXd& v) {
        for (int i = 0; i < dim; ++i) {
            if (!observed[i]) v[i] = 0;
        }
    };

    FittedNodeModel model;
    model.spec = spec;
    model.num_params = dim;

    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
    double nll = objective.derivatives(theta, grad, &hess);
    mask(grad);
    model.nll_trace.push_back(nll);

    auto finish = [&](Termination why) {
        model.termination = why;
        model.params = unpack_parameters(spec, theta);
        model.loglik = -nll;
        model.converged =
            why == Termination::GradientTolerance || why == Termination::RelativeChange ||
            (why == Termination::LineSearchStalled &&
             max_abs(grad) <= 1e-5 * std::max(1.0, std::abs(nll)));
        return model;
    };

    constexpr double kArmijo = 1e-4;
    constexpr int kMaxHalvings = 60;
    constexpr int kMaxDoublings = 40;

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        if (max_abs(grad) <= opts.tol_grad) return finish(Termination::GradientTolerance);

        Eigen::MatrixXd h = hess;
        for (int i = 0; i < dim; ++i) {
            if (!observed[i]) {
                h.row(i).setZero();
                h.col(i).setZero();
                h(i, i) = 1;
            }
        }
        Eigen::VectorXd direction = modified_newton_direction(h, grad);
        mask(direction);
        bool newton = true;
        if (!(grad.dot(direction) < 0) || !direction.allFinite()) {
            direction = -grad;
            newton = false;
        }

        double step = 0;
        double trial_nll = nll;
        for (int attempt = 0; attempt < 2 && step == 0; ++attempt) {
            const double slope = grad.dot(direction);
            double t = 1;
            for (int k = 0; k < kMaxHalvings; ++k, t *= 0.5) {
                const double f = objective.value(theta + t * direction);
                if (std::isfinite(f) && f <= nll + kArmijo * t * slope && f < nll) {
                    step = t;
                    trial_nll = f;
                    break;
                }
            }
            if (step == 0 && newton) {
                direction = -grad;
                newton = false;
            } else {
                break;
            }
        }
        if (step == 0) return finish(Termination::LineSearchStalled);

        // Keep stepping further while the objective still drops: along a
        // separating direction the likelihood has no finite maximizer and
        // this reaches the parameter bound in a few iterations.
        if (step == 1) {
            for (int k = 0; k < kMaxDoublings; ++k) {
                if (max_abs(theta + step * direction) > opts.param_bound) break;
                const double f = objective.value(theta + 2 * step * direction);
                if (!(std::isfinite(f) && f < trial_nll)) break;
                step *= 2;
                trial_nll = f;
            }
        }

        Eigen::VectorXd next = theta + step * direction;
        if (max_abs(next) > opts.param_bound) {
            // Pull back onto the bound along the search ray.
            double t_bound = step;
            for (int i = 0; i < dim; ++i) {
                if (direction[i] == 0) continue;
                const double room = (direction[i] > 0 ? opts.param_bound - theta[i]
                                                      : opts.param_bound + theta[i]);
                t_bound = std::min(t_bound, std::max(room, 0.0) / std::abs(direction[i]));
            }
            theta += t_bound * direction;
            nll = objective.value(theta);
            model.iterations = iter + 1;
            model.nll_trace.push_back(nll);
            FittedNodeModel boundary = finish(Termination::IterationCap);
            boundary.converged = false;
            throw SeparationError("likelihood increases without bound for target '" +
                                      data.names()[spec.node] + "' (separation)",
                                  std::move(boundary));
        }

        theta = std::move(next);
        const double change = std::abs(nll - trial_nll);
        const double previous = nll;
        nll = objective.derivatives(theta, grad, &hess);
        mask(grad);
        model.iterations = iter + 1;
        model.nll_trace.push_back(nll);
        if (newton && change <= opts.tol_nll * std::abs(previous)) {
            return finish(Termination::RelativeChange);
        }
    }
    return finish(Termination::IterationCap);
}

}  // namespace ocd
