#include "run_config.hpp"

namespace ocd::cli {

namespace {

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& field) {
    if (j.contains(key)) j.at(key).get_to(field);
}

template <typename T>
void read(const nlohmann::json& j, const char* key, std::optional<T>& field) {
    if (!j.contains(key)) return;
    if (j.at(key).is_null()) {
        field.reset();
    } else {
        field = j.at(key).get<T>();
    }
}

}  // namespace

void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{
        {"command", c.command},
        {"experiment", c.experiment},
        {"csv", c.csv},
        {"levels", c.levels},
        {"discretize", optional_json(c.discretize)},
        {"trichotomize_zero", c.trichotomize_zero},
        {"link", c.link},
        {"search", c.search},
        {"init", c.init},
        {"max_parents", optional_json(c.max_parents)},
        {"first_improvement", c.first_improvement},
        {"seed", c.seed},
        {"max_iter", c.max_iter},
        {"tol_grad", c.tol_grad},
        {"tol_nll", c.tol_nll},
        {"param_bound", c.param_bound},
        {"threads", c.threads},
        {"graph", c.graph},
        {"truth", c.truth},
        {"estimated", c.estimated},
        {"out", c.out},
        {"dot", c.dot},
        {"tsv", c.tsv},
        {"out_dir", c.out_dir},
        {"p", optional_json(c.p)},
        {"edges", optional_json(c.edges)},
        {"num_levels", optional_json(c.num_levels)},
        {"sigma", optional_json(c.sigma)},
        {"n", optional_json(c.n)},
        {"confounder", c.confounder},
        {"no_confounder", c.no_confounder},
        {"repeats", optional_json(c.repeats)},
        {"sigmas", optional_json(c.sigmas)},
        {"ns", optional_json(c.ns)},
    };
}

void from_json(const nlohmann::json& j, RunConfig& c) {
    read(j, "command", c.command);
    read(j, "experiment", c.experiment);
    read(j, "csv", c.csv);
    read(j, "levels", c.levels);
    read(j, "discretize", c.discretize);
    read(j, "trichotomize_zero", c.trichotomize_zero);
    read(j, "link", c.link);
    read(j, "search", c.search);
    read(j, "init", c.init);
    read(j, "max_parents", c.max_parents);
    read(j, "first_improvement", c.first_improvement);
    read(j, "seed", c.seed);
    read(j, "max_iter", c.max_iter);
    read(j, "tol_grad", c.tol_grad);
    read(j, "tol_nll", c.tol_nll);
    read(j, "param_bound", c.param_bound);
    read(j, "threads", c.threads);
    read(j, "graph", c.graph);
    read(j, "truth", c.truth);
    read(j, "estimated", c.estimated);
    read(j, "out", c.out);
    read(j, "dot", c.dot);
    read(j, "tsv", c.tsv);
    read(j, "out_dir", c.out_dir);
    read(j, "p", c.p);
    read(j, "edges", c.edges);
    read(j, "num_levels", c.num_levels);
    read(j, "sigma", c.sigma);
    read(j, "n", c.n);
    read(j, "confounder", c.confounder);
    read(j, "no_confounder", c.no_confounder);
    read(j, "repeats", c.repeats);
    read(j, "sigmas", c.sigmas);
    read(j, "ns", c.ns);
}

}  // namespace ocd::cli
