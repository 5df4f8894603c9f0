#include "ocd/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ocd {

namespace {

double linear_predictor(const NodeSpec& spec, const NodeParameters& params,
                        const std::vector<std::vector<int>>& columns, std::size_t row) {
    double eta = params.alpha;
    for (std::size_t k = 0; k < spec.parents.size(); ++k) {
        const int code = columns[spec.parents[k]][row];
        if (code < spec.parent_levels[k]) eta += params.betas[k][code - 1];
    }
    return eta;
}

int draw_category(const NodeSpec& spec, const NodeParameters& params, double eta, double u,
                  LinkKind link) {
    const int L = spec.target_levels;
    for (int l = 1; l < L; ++l) {
        const double cut = l == 1 ? 0.0 : params.gammas[l - 2];
        if (u <= link_cdf(link, cut - eta)) return l;
    }
    return L;
}

// Fills columns[j] (n rows) for each j in `nodes`, which must be in
// topological order with parents already filled.
void sample_columns(const GroundTruthModel& model, const std::vector<NodeId>& nodes,
                    std::size_t n, Rng& rng, std::vector<std::vector<int>>& columns) {
    for (NodeId j : nodes) columns[j].assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (NodeId j : nodes) {
            const double eta = linear_predictor(model.specs[j], model.params[j], columns, i);
            columns[j][i] = draw_category(model.specs[j], model.params[j], eta, rng.uniform(), model.link);
        }
    }
}

NodeParameters normalized(double alpha, std::vector<std::vector<double>> betas,
                          const std::vector<double>& thresholds) {
    NodeParameters params;
    params.alpha = alpha - thresholds.front();
    params.betas = std::move(betas);
    for (std::size_t l = 1; l < thresholds.size(); ++l) {
        params.gammas.push_back(thresholds[l] - thresholds.front());
    }
    return params;
}

}  // namespace

std::vector<std::string> default_names(int p) {
    std::vector<std::string> names;
    for (int j = 1; j <= p; ++j) names.push_back("X" + std::to_string(j));
    return names;
}

Dag random_dag(int p, int num_edges, Rng& rng) {
    const long max_edges = static_cast<long>(p) * (p - 1) / 2;
    if (num_edges < 0 || num_edges > max_edges) {
        throw Error(ErrorKind::TooManyEdges, std::to_string(num_edges) + " edges requested; a DAG on " +
                                                 std::to_string(p) + " nodes holds at most " +
                                                 std::to_string(max_edges));
    }
    std::vector<NodeId> order(p);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<Edge> candidates;
    for (int a = 0; a < p; ++a) {
        for (int b = a + 1; b < p; ++b) candidates.push_back({order[a], order[b]});
    }
    // Partial Fisher-Yates: the first num_edges slots are a uniform subset.
    for (int i = 0; i < num_edges; ++i) {
        const std::size_t pick = i + rng.uniform_index(candidates.size() - i);
        std::swap(candidates[i], candidates[pick]);
    }
    candidates.resize(num_edges);
    return Dag(p, candidates);
}

std::vector<double> balanced_thresholds(std::span<const double> etas, int levels, LinkKind link) {
    if (etas.empty()) throw Error(ErrorKind::InvalidArgument, "empty predictor sample");
    const auto [lo_it, hi_it] = std::minmax_element(etas.begin(), etas.end());
    const double m = static_cast<double>(etas.size());
    auto mixture_cdf = [&](double c) {
        double total = 0;
        for (double eta : etas) total += link_cdf(link, c - eta);
        return total / m;
    };
    std::vector<double> thresholds;
    for (int l = 1; l < levels; ++l) {
        const double target = static_cast<double>(l) / levels;
        const double q = link_quantile(link, target);
        double lo = *lo_it + q;
        double hi = *hi_it + q;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
            const double mid = 0.5 * (lo + hi);
            (mixture_cdf(mid) < target ? lo : hi) = mid;
        }
        thresholds.push_back(0.5 * (lo + hi));
    }
    return thresholds;
}

std::vector<double> balanced_cutpoints(NodeId j, const GroundTruthModel& partial, Rng& rng,
                                       std::size_t presample) {
    const Dag& g = partial.graph;
    std::vector<NodeId> ancestors;
    for (NodeId v : g.topological_order()) {
        if (v != j && g.reachable(v, j)) ancestors.push_back(v);
    }
    std::vector<std::vector<int>> columns(g.num_nodes());
    sample_columns(partial, ancestors, presample, rng, columns);
    std::vector<double> etas(presample);
    for (std::size_t i = 0; i < presample; ++i) {
        etas[i] = linear_predictor(partial.specs[j], partial.params[j], columns, i);
    }
    return balanced_thresholds(etas, partial.levels[j], partial.link);
}

GroundTruthModel draw_parameters(const Dag& g, const std::vector<int>& levels,
                                 const ParameterDraw& how, Rng& rng) {
    const int p = g.num_nodes();
    if (static_cast<int>(levels.size()) != p) {
        throw Error(ErrorKind::NodeCountMismatch, "one level count per node required");
    }
    if (!(how.sigma > 0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");
    if (how.presample == 0) throw Error(ErrorKind::InvalidArgument, "presample must be positive");
    for (int l : levels) {
        if (l < 2) throw Error(ErrorKind::InvalidArgument, "every node needs >= 2 levels");
    }

    GroundTruthModel model;
    model.graph = g;
    model.names = default_names(p);
    model.levels = levels;
    model.link = how.link;
    model.specs.resize(p);
    model.params.resize(p);
    for (NodeId j = 0; j < p; ++j) {
        NodeSpec& spec = model.specs[j];
        spec.node = j;
        spec.parents = g.parents(j);
        spec.target_levels = levels[j];
        for (NodeId k : spec.parents) spec.parent_levels.push_back(levels[k]);
        spec.link = how.link;
    }

    std::vector<double> shared;
    if (how.shared_effects) {
        if (std::adjacent_find(levels.begin(), levels.end(), std::not_equal_to<>()) != levels.end()) {
            throw Error(ErrorKind::InvalidArgument, "shared effects need equal level counts");
        }
        Rng shared_rng = rng.split(static_cast<std::uint64_t>(p) + 2);
        for (int h = 0; h < levels.front() - 1; ++h) shared.push_back(shared_rng.normal(0, how.sigma));
    }

    Rng presample_rng = rng.split(static_cast<std::uint64_t>(p) + 1);
    std::vector<std::vector<int>> presample(p);
    std::vector<double> etas(how.presample);
    for (NodeId j : g.topological_order()) {
        Rng node_rng = rng.split(static_cast<std::uint64_t>(j));
        const NodeSpec& spec = model.specs[j];
        const double alpha = node_rng.normal(0, how.sigma);
        std::vector<std::vector<double>> betas;
        for (int levels_k : spec.parent_levels) {
            if (how.shared_effects) {
                betas.push_back(shared);
                continue;
            }
            std::vector<double> b(levels_k - 1);
            for (double& v : b) v = node_rng.normal(0, how.sigma);
            betas.push_back(std::move(b));
        }
        NodeParameters raw{alpha, betas, {}};
        for (std::size_t i = 0; i < how.presample; ++i) {
            etas[i] = linear_predictor(spec, raw, presample, i);
        }
        model.params[j] = normalized(alpha, std::move(betas), balanced_thresholds(etas, spec.target_levels, how.link));
        sample_columns(model, {j}, how.presample, presample_rng, presample);
    }
    return model;
}

OrdinalDataset sample(const GroundTruthModel& model, std::size_t n, Rng& rng) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "sample size must be positive");
    const int p = model.graph.num_nodes();
    std::vector<std::vector<int>> columns(p);
    sample_columns(model, model.graph.topological_order(), n, rng, columns);
    return OrdinalDataset(model.names, model.levels, std::move(columns));
}

JointTable joint_distribution(const GroundTruthModel& model) {
    const int p = model.graph.num_nodes();
    JointTable table{model.levels, {}};
    const std::size_t cells = table.cells();
    table.probs.assign(cells, 0.0);
    std::vector<int> config(p, 1);
    std::vector<int> codes;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        std::size_t rest = cell;
        for (int j = p - 1; j >= 0; --j) {
            config[j] = static_cast<int>(rest % model.levels[j]) + 1;
            rest /= model.levels[j];
        }
        double prob = 1;
        for (NodeId j = 0; j < p; ++j) {
            codes.clear();
            for (NodeId k : model.specs[j].parents) codes.push_back(config[k]);
            prob *= category_probs(model.specs[j], model.params[j], codes)[config[j] - 1];
        }
        table.probs[cell] = prob;
    }
    return table;
}

JointTable empirical_joint(const OrdinalDataset& data) {
    JointTable table{data.levels(), {}};
    table.probs.assign(table.cells(), 0.0);
    const double weight = 1.0 / static_cast<double>(data.num_rows());
    for (std::size_t i = 0; i < data.num_rows(); ++i) {
        std::size_t cell = 0;
        for (int j = 0; j < data.num_columns(); ++j) cell = cell * data.levels(j) + (data.at(i, j) - 1);
        table.probs[cell] += weight;
    }
    return table;
}

GroundTruthModel two_node_model(std::span<const double> root_probs,
                                std::span<const double> effects,
                                std::span<const double> cutpoints, LinkKind link) {
    const int S = static_cast<int>(root_probs.size());
    const int L = static_cast<int>(cutpoints.size()) + 1;
    if (S < 2 || L < 2 || effects.size() != root_probs.size()) {
        throw Error(ErrorKind::DimensionMismatch, "need S >= 2 probabilities and S effects");
    }
    if (cutpoints.front() != 0) throw Error(ErrorKind::InvalidArgument, "first cutpoint must be 0");

    GroundTruthModel model;
    const std::vector<Edge> edge{{0, 1}};
    model.graph = Dag(2, edge);
    model.names = default_names(2);
    model.levels = {S, L};
    model.link = link;
    model.specs = {NodeSpec{0, {}, S, {}, link}, NodeSpec{1, {0}, L, {S}, link}};

    std::vector<double> thresholds;
    double cum = 0;
    for (int s = 0; s < S - 1; ++s) {
        cum += root_probs[s];
        thresholds.push_back(link_quantile(link, cum));
    }
    NodeParameters root = normalized(0.0, {}, thresholds);

    NodeParameters child;
    child.alpha = effects.back();
    child.betas.emplace_back();
    for (int s = 0; s < S - 1; ++s) child.betas[0].push_back(effects[s] - effects.back());
    child.gammas.assign(cutpoints.begin() + 1, cutpoints.end());
    model.params = {root, child};
    return model;
}

GroundTruthModel model_from_fits(const Dag& graph, const std::vector<std::string>& names,
                                 const std::vector<FittedNodeModel>& fits) {
    GroundTruthModel model;
    model.graph = graph;
    model.names = names;
    for (NodeId j = 0; j < graph.num_nodes(); ++j) {
        const FittedNodeModel& f = fits.at(j);
        if (f.spec.node != j || f.spec.parents != graph.parents(j)) {
            throw Error(ErrorKind::InvalidArgument, "fitted model does not match the graph");
        }
        model.levels.push_back(f.spec.target_levels);
        model.specs.push_back(f.spec);
        model.params.push_back(f.params);
        model.link = f.spec.link;
    }
    return model;
}

PairSample bivariate_scenario(int cause_levels, int effect_levels, double sigma, std::size_t n,
                              Rng& rng, LinkKind link) {
    const std::vector<Edge> edge{{0, 1}};
    const Dag g(2, edge);
    ParameterDraw how;
    how.sigma = sigma;
    how.link = link;
    Rng param_rng = rng.split(0);
    Rng data_rng = rng.split(1);
    GroundTruthModel model = draw_parameters(g, {cause_levels, effect_levels}, how, param_rng);
    OrdinalDataset data = sample(model, n, data_rng);
    return {std::move(data), 0, std::move(model)};
}

PairSample confounder_scenario(double sigma, std::size_t n, Rng& rng, LinkKind link) {
    // Node ids: X1 = 0, X2 = 1, X3 = 2.
    const std::vector<Edge> edges{{2, 0}, {2, 1}, {0, 1}};
    const Dag g(3, edges);
    ParameterDraw how;
    how.sigma = sigma;
    how.link = link;
    how.shared_effects = true;
    Rng param_rng = rng.split(0);
    Rng data_rng = rng.split(1);
    GroundTruthModel model = draw_parameters(g, {5, 5, 5}, how, param_rng);
    const OrdinalDataset full = sample(model, n, data_rng);
    const std::vector<int> observed{0, 1};
    return {full.select(observed), 0, std::move(model)};
}

}  // namespace ocd
