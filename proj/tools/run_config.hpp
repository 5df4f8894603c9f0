#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ocd::cli {

inline constexpr const char* kSchemaVersion = "ocd.v1";

// Everything a run depends on. Echoed into every output document, and
// accepted back through --config.
struct RunConfig {
    std::string command;
    std::string experiment;

    std::string csv;
    std::string levels = "auto";
    std::optional<int> discretize;
    bool trichotomize_zero = false;

    std::string link = "probit";
    std::string search = "greedy";
    std::string init = "empty";
    std::optional<int> max_parents;
    bool first_improvement = false;
    std::uint64_t seed = 1;
    int max_iter = 200;
    double tol_grad = 1e-8;
    double tol_nll = 1e-10;
    double param_bound = 30;
    // 0 means OCD_THREADS or the hardware concurrency.
    int threads = 0;

    std::string graph;
    std::string truth;
    std::string estimated;
    std::string out;
    std::string dot;
    std::string tsv;
    std::string out_dir;

    // simulate and experiment
    std::optional<int> p;
    std::optional<int> edges;
    std::optional<int> num_levels;
    std::optional<double> sigma;
    std::optional<std::size_t> n;
    bool confounder = false;
    bool no_confounder = false;
    std::optional<int> repeats;
    std::optional<std::vector<double>> sigmas;
    std::optional<std::vector<std::size_t>> ns;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

}  // namespace ocd::cli
