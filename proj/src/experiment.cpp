#include "ocd/experiment.hpp"

#include <numeric>

#include "ocd/parallel.hpp"
#include "ocd/scoring.hpp"
#include "ocd/simulate.hpp"

namespace ocd {

namespace {

FittedNodeModel fit_or_boundary(const NodeSpec& spec, const OrdinalDataset& data,
                                const FitOptions& opts) {
    try {
        return fit(spec, data, opts);
    } catch (const SeparationError& e) {
        return e.boundary_model();
    }
}

GroundTruthModel fitted_model(const Dag& g, const OrdinalDataset& data, const FitOptions& opts) {
    std::vector<FittedNodeModel> fits;
    for (NodeId j = 0; j < g.num_nodes(); ++j) {
        fits.push_back(fit_or_boundary(NodeSpec::from_data(j, g.parents(j), data, opts.link), data, opts));
    }
    return model_from_fits(g, data.names(), fits);
}

}  // namespace

Fig1Result fig1_identifiability(const Fig1Config& config) {
    const std::vector<double> root{0.25, 0.25, 0.5}, effects{1, -1, 1}, cuts{0, 1};
    const GroundTruthModel truth = two_node_model(root, effects, cuts, config.fit.link);
    Rng rng(config.seed);
    const OrdinalDataset data = sample(truth, config.n, rng);
    const JointTable true_joint = joint_distribution(truth);

    const Dag forward(2, std::vector<Edge>{{0, 1}});
    const Dag reverse(2, std::vector<Edge>{{1, 0}});
    Fig1Result r;
    r.n = config.n;
    r.tv_forward = total_variation(joint_distribution(fitted_model(forward, data, config.fit)), true_joint);
    r.tv_reverse = total_variation(joint_distribution(fitted_model(reverse, data, config.fit)), true_joint);
    r.bic_forward = global_bic(forward, data, config.fit).bic;
    r.bic_reverse = global_bic(reverse, data, config.fit).bic;
    return r;
}

ShdCurveResult shd_curve(const ShdCurveConfig& config) {
    const std::size_t per_sigma = static_cast<std::size_t>(config.repeats);
    ShdCurveResult result;
    result.cells.resize(config.sigmas.size() * per_sigma);
    const Rng base(config.seed);

    parallel_for(result.cells.size(), config.threads, [&](std::size_t index) {
        const std::size_t s = index / per_sigma;
        const int repeat = static_cast<int>(index % per_sigma);
        Rng rng = base.split(s).split(static_cast<std::uint64_t>(repeat));
        Rng graph_rng = rng.split(0);
        Rng param_rng = rng.split(1);
        Rng data_rng = rng.split(2);

        const Dag truth = random_dag(config.p, config.edge_count(), graph_rng);
        ParameterDraw how;
        how.sigma = config.sigmas[s];
        how.link = config.search.fit.link;
        const GroundTruthModel model =
            draw_parameters(truth, std::vector<int>(config.p, config.levels), how, param_rng);
        const OrdinalDataset data = sample(model, config.n, data_rng);

        SearchOptions opts = config.search;
        opts.threads = 1;
        const DiscoveryResult found = greedy_search(data, Dag(config.p), opts);

        ShdCell& cell = result.cells[index];
        cell.sigma = config.sigmas[s];
        cell.repeat = repeat;
        cell.shd = shd(found.graph, truth);
        cell.true_edges = static_cast<int>(truth.num_edges());
        cell.estimated_edges = static_cast<int>(found.graph.num_edges());
        cell.bic = found.bic;
        cell.iterations = found.iterations;
    });

    for (std::size_t s = 0; s < config.sigmas.size(); ++s) {
        ShdSummary summary;
        summary.sigma = config.sigmas[s];
        for (std::size_t r = 0; r < per_sigma; ++r) {
            const ShdCell& cell = result.cells[s * per_sigma + r];
            summary.mean_shd += cell.shd;
            summary.mean_empty_shd += cell.true_edges;
        }
        if (per_sigma > 0) {
            summary.mean_shd /= static_cast<double>(per_sigma);
            summary.mean_empty_shd /= static_cast<double>(per_sigma);
        }
        result.summary.push_back(summary);
    }
    return result;
}

PairGridResult pair_grid(const PairGridConfig& config) {
    const std::size_t per_cell = static_cast<std::size_t>(config.repeats);
    const std::size_t per_sigma = config.ns.size() * per_cell;
    PairGridResult result;
    result.cells.resize(config.sigmas.size() * per_sigma);
    const Rng base(config.seed);

    parallel_for(result.cells.size(), config.threads, [&](std::size_t index) {
        const std::size_t s = index / per_sigma;
        const std::size_t k = index % per_sigma / per_cell;
        const int repeat = static_cast<int>(index % per_cell);
        Rng rng = base.split(s).split(k).split(static_cast<std::uint64_t>(repeat));
        Rng scenario_rng = rng.split(0);
        Rng orientation_rng = rng.split(1);

        const double sigma = config.sigmas[s];
        const std::size_t n = config.ns[k];
        const PairSample pair =
            config.scenario == PairScenario::Confounder
                ? confounder_scenario(sigma, n, scenario_rng, config.fit.link)
                : bivariate_scenario(config.cause_levels, config.effect_levels, sigma, n,
                                     scenario_rng, config.fit.link);

        std::vector<int> order{pair.cause, 1 - pair.cause};
        if (config.randomize_orientation && orientation_rng.uniform() < 0.5) std::swap(order[0], order[1]);
        const OrdinalDataset shown = pair.data.select(order);

        PairCell& cell = result.cells[index];
        cell.sigma = sigma;
        cell.n = n;
        cell.repeat = repeat;
        cell.truth = order[0] == pair.cause ? Direction::Forward : Direction::Backward;
        cell.decision = forced_decision(shown, config.fit);
    });

    for (std::size_t s = 0; s < config.sigmas.size(); ++s) {
        for (std::size_t k = 0; k < config.ns.size(); ++k) {
            std::vector<Direction> decisions, truth;
            std::vector<double> confidences;
            PairSummary summary;
            summary.sigma = config.sigmas[s];
            summary.n = config.ns[k];
            for (std::size_t r = 0; r < per_cell; ++r) {
                const PairCell& cell = result.cells[s * per_sigma + k * per_cell + r];
                decisions.push_back(cell.decision.direction);
                confidences.push_back(cell.decision.confidence);
                truth.push_back(cell.truth);
                summary.ties += cell.decision.tie;
            }
            if (!truth.empty()) summary.accuracy = accuracy(decisions, truth);
            const bool both = std::count(truth.begin(), truth.end(), Direction::Forward) > 0 &&
                              std::count(truth.begin(), truth.end(), Direction::Backward) > 0;
            if (both) summary.auc = auc_ranked(confidences, truth);
            result.summary.push_back(summary);
        }
    }
    return result;
}

}  // namespace ocd
