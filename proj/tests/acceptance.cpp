// Acceptance criteria, one PASS/FAIL line each. Exit status is nonzero if
// any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "ocd/experiment.hpp"
#include "ocd/parallel.hpp"
#include "ocd/scoring.hpp"
#include "ocd/search.hpp"
#include "ocd/simulate.hpp"

using namespace ocd;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double budget_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > budget_seconds) {
        out.pass = false;
        out.detail += " (over time budget)";
    }
    failures += !out.pass;
    std::printf("%s %-4s %-40s %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", id, title, out.detail.c_str(), seconds);
    std::fflush(stdout);
}

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

OrdinalDataset uniform_data(std::size_t n, const std::vector<int>& levels, Rng& rng) {
    std::vector<std::vector<int>> cols;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < levels.size(); ++j) {
        std::vector<int> c(n);
        for (auto& v : c) v = static_cast<int>(rng.uniform_index(levels[j])) + 1;
        cols.push_back(std::move(c));
        names.push_back("V" + std::to_string(j + 1));
    }
    return OrdinalDataset(names, levels, cols);
}

Outcome fig1() {
    const Fig1Result r = fig1_identifiability({});
    const bool pass = r.tv_forward <= 0.005 && r.tv_reverse >= 0.005 && r.bic_reverse > r.bic_forward;
    return {pass, fmt("TV fwd=%.5f rev=%.5f, BIC fwd=%.2f rev=%.2f", r.tv_forward, r.tv_reverse,
                      r.bic_forward, r.bic_reverse)};
}

ShdCurveConfig shd_config(std::vector<double> sigmas) {
    ShdCurveConfig c;
    c.sigmas = std::move(sigmas);
    c.threads = default_thread_count();
    return c;
}

Outcome strong_signal() {
    const auto r = shd_curve(shd_config({1.5}));
    return {r.summary[0].mean_shd <= 1, fmt("mean SHD=%.2f (<= 1)", r.summary[0].mean_shd)};
}

Outcome monotone() {
    const auto r = shd_curve(shd_config({0.25, 0.75, 1.5}));
    const double a = r.summary[0].mean_shd, b = r.summary[1].mean_shd, c = r.summary[2].mean_shd;
    return {a >= b && b >= c && c < a, fmt("mean SHD %.2f, %.2f, %.2f at sigma 0.25, 0.75, 1.5", a, b, c)};
}

PairGridConfig pair_config(PairScenario scenario, int levels, double sigma) {
    PairGridConfig c;
    c.scenario = scenario;
    c.cause_levels = c.effect_levels = levels;
    c.sigmas = {sigma};
    c.ns = {1000};
    c.repeats = 100;
    c.threads = default_thread_count();
    return c;
}

Outcome binary_null() {
    const auto r = pair_grid(pair_config(PairScenario::Bivariate, 2, 1.0));
    const double acc = r.summary[0].accuracy;
    return {std::abs(acc - 0.5) <= 0.15, fmt("ACC=%.2f (0.5 +- 0.15), exact ties=%d", acc, r.summary[0].ties)};
}

Outcome bivariate() {
    const auto r = pair_grid(pair_config(PairScenario::Bivariate, 5, 1.0));
    return {r.summary[0].accuracy >= 0.85, fmt("ACC=%.2f (>= 0.85)", r.summary[0].accuracy)};
}

Outcome confounder() {
    const auto r = pair_grid(pair_config(PairScenario::Confounder, 5, 1.5));
    return {r.summary[0].accuracy >= 0.7, fmt("ACC=%.2f (>= 0.7)", r.summary[0].accuracy)};
}

Outcome optimizer() {
    Rng rng(707);
    double worst_grad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int p = 1 + static_cast<int>(rng.uniform_index(3));
        std::vector<int> levels(p);
        for (auto& l : levels) l = 2 + static_cast<int>(rng.uniform_index(4));
        const auto d = uniform_data(20 + rng.uniform_index(80), levels, rng);
        std::vector<NodeId> parents;
        for (NodeId k = 1; k < p; ++k) parents.push_back(k);
        const auto spec = NodeSpec::from_data(0, parents, d, trial % 2 ? LinkKind::Logit : LinkKind::Probit);
        Eigen::VectorXd theta(spec.num_params());
        for (int i = 0; i < theta.size(); ++i) theta[i] = rng.normal(0, 0.8);
        const Eigen::VectorXd g = nll_gradient(spec, theta, d);
        const double h = 1e-5;
        for (int i = 0; i < theta.size(); ++i) {
            Eigen::VectorXd up = theta, down = theta;
            up[i] += h;
            down[i] -= h;
            const double fd = (negative_log_likelihood(spec, up, d) - negative_log_likelihood(spec, down, d)) / (2 * h);
            worst_grad = std::max(worst_grad, std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])));
        }
    }

    double worst_marginal = 0;
    bool monotone = true;
    auto check_trace = [&](const FittedNodeModel& m) {
        for (std::size_t i = 1; i < m.nll_trace.size(); ++i) monotone &= m.nll_trace[i] <= m.nll_trace[i - 1];
    };
    for (int trial = 0; trial < 50; ++trial) {
        const int L = 2 + static_cast<int>(rng.uniform_index(6));
        const auto d = uniform_data(50 + rng.uniform_index(500), {L}, rng);
        std::vector<double> counts(L, 0);
        for (int v : d.column(0)) counts[v - 1] += 1;
        if (std::find(counts.begin(), counts.end(), 0.0) != counts.end()) continue;
        const auto m = fit(NodeSpec::from_data(0, {}, d, LinkKind::Probit), d);
        check_trace(m);
        const auto probs = m.category_probs({});
        for (int l = 0; l < L; ++l) {
            worst_marginal = std::max(worst_marginal, std::abs(probs[l] - counts[l] / d.num_rows()));
        }
    }
    for (int trial = 0; trial < 50; ++trial) {
        const Dag g(3, std::vector<Edge>{{1, 0}, {2, 0}});
        ParameterDraw how;
        how.sigma = 0.5 + trial * 0.03;
        how.presample = 2000;
        const auto d = sample(draw_parameters(g, {3 + trial % 3, 3, 2}, how, rng), 300, rng);
        try {
            check_trace(fit(NodeSpec::from_data(0, {1, 2}, d, LinkKind::Probit), d));
        } catch (const SeparationError& e) {
            check_trace(e.boundary_model());
        }
    }
    const bool pass = worst_grad <= 1e-5 && worst_marginal <= 1e-8 && monotone;
    return {pass, fmt("max grad rel err=%.2e, max marginal err=%.2e, NLL monotone=%s", worst_grad,
                      worst_marginal, monotone ? "yes" : "no")};
}

Outcome algebra() {
    Rng rng(808);
    bool decomposes = true, transparent = true, never_better = true;
    int equal = 0;
    const int datasets = 20;
    for (int rep = 0; rep < datasets; ++rep) {
        const Dag truth = random_dag(3, static_cast<int>(rng.uniform_index(4)), rng);
        ParameterDraw how;
        how.sigma = 1.0;
        const auto d = sample(draw_parameters(truth, {3, 3, 3}, how, rng), 500, rng);

        ScoreCache cache;
        const auto ex = exhaustive_search(d, {}, &cache);
        const auto gr = greedy_search(d, Dag(3), {}, &cache);
        never_better &= gr.bic >= ex.bic;
        equal += gr.bic == ex.bic;

        for (const Dag& g : enumerate_dags(3)) {
            const auto warm = global_bic(g, d, {}, &cache);
            const auto cold = global_bic(g, d, {});
            double sum = 0;
            for (const auto& l : cold.local) sum += l.bic;
            decomposes &= cold.bic == sum;
            transparent &= warm.bic == cold.bic && warm.local == cold.local;
        }
    }
    const bool pass = decomposes && transparent && never_better && equal >= datasets * 8 / 10;
    return {pass, fmt("decomposes=%s, cache bit-identical=%s, greedy>=exhaustive=%s, equal in %d/%d",
                      decomposes ? "yes" : "no", transparent ? "yes" : "no", never_better ? "yes" : "no",
                      equal, datasets)};
}

Outcome smoke_p20() {
    ShdCurveConfig c = shd_config({0.75});
    c.p = 20;
    c.repeats = 3;
    const auto r = shd_curve(c);
    const auto& s = r.summary[0];
    return {s.mean_shd < s.mean_empty_shd, fmt("mean SHD=%.2f vs empty-graph %.2f", s.mean_shd, s.mean_empty_shd)};
}

}  // namespace

int main() {
    std::printf("threads: %d\n", default_thread_count());
    criterion("1", "fig1 identifiability", 60, fig1);
    criterion("2", "strong-signal recovery (p=10, sigma=1.5)", 15 * 60, strong_signal);
    criterion("3", "SHD monotone in sigma", 45 * 60, monotone);
    criterion("4", "binary non-identifiability null", 5 * 60, binary_null);
    criterion("5", "bivariate accuracy (S=L=5, sigma=1)", 10 * 60, bivariate);
    criterion("6", "confounder robustness (sigma=1.5)", 15 * 60, confounder);
    criterion("7", "optimizer correctness", 60, optimizer);
    criterion("8", "score/search algebra", 10 * 60, algebra);
    criterion("S", "p=20 smoke (sigma=0.75)", 15 * 60, smoke_p20);
    std::printf("%s: %d failing\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
