#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <sstream>

#include "doctest.h"
#include "ocd/dataset.hpp"
#include "ocd/error.hpp"
#include "ocd/link.hpp"
#include "ocd/metrics.hpp"
#include "ocd/simulate.hpp"
#include "test_support.hpp"

using namespace ocd;

namespace {

GroundTruthModel reference_pair_model() {
    const std::vector<double> probs{0.25, 0.25, 0.5}, effects{1, -1, 1}, cuts{0, 1};
    return two_node_model(probs, effects, cuts, LinkKind::Probit);
}

std::string csv_bytes(const OrdinalDataset& d) {
    std::ostringstream out;
    write_csv(out, d);
    return out.str();
}

}  // namespace

TEST_CASE("random_dag") {
    Rng rng(1);
    CHECK(random_dag(5, 0, rng).num_edges() == 0);
    const Dag g = random_dag(10, 9, rng);
    CHECK(g.num_edges() == 9);
    CHECK(is_acyclic(10, g.edges()));
    CHECK_THROWS_AS(random_dag(3, 4, rng), Error);

    // A complete DAG on 3 nodes is determined by its topological order, so
    // the 3! orientations should appear equally often.
    std::map<std::vector<Edge>, int> counts;
    const int draws = 6000;
    for (int i = 0; i < draws; ++i) ++counts[random_dag(3, 3, rng).edges()];
    CHECK(counts.size() == 6);
    double chi2 = 0;
    for (const auto& [edges, c] : counts) {
        CHECK(is_acyclic(3, edges));
        chi2 += std::pow(c - draws / 6.0, 2) / (draws / 6.0);
    }
    CHECK(chi2 < boost::math::quantile(boost::math::chi_squared(5), 0.999));
}

TEST_CASE("balanced cutpoints") {
    GroundTruthModel root;
    root.graph = Dag(1);
    root.names = {"X1"};
    root.levels = {4};
    root.specs = {NodeSpec{0, {}, 4, {}, LinkKind::Probit}};
    root.params = {NodeParameters{}};
    Rng rng(2);
    const auto c = balanced_cutpoints(0, root, rng);
    REQUIRE(c.size() == 3);
    CHECK(c[0] == doctest::Approx(-0.6744897501960817).epsilon(1e-6));
    CHECK(c[1] == doctest::Approx(0).scale(1));
    CHECK(std::abs(c[1]) < 1e-6);
    CHECK(c[2] == doctest::Approx(0.6744897501960817).epsilon(1e-6));

    // L = 2: the single threshold is the median of the predictor mixture.
    const std::vector<double> etas{-1, 0, 2};
    const auto t = balanced_thresholds(etas, 2, LinkKind::Probit);
    REQUIRE(t.size() == 1);
    double mass = 0;
    for (double e : etas) mass += link_cdf(LinkKind::Probit, t[0] - e) / 3;
    CHECK(mass == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("draw_parameters") {
    Rng rng(3);
    const Dag g(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
    ParameterDraw tiny;
    tiny.sigma = 1e-9;
    const std::vector<int> levels{4, 3, 2};
    const auto m = draw_parameters(g, levels, tiny, rng);
    for (int j = 0; j < 3; ++j) {
        // Normalized so that gamma_1 = 0: alpha is minus the first balanced cutpoint.
        CHECK(m.params[j].alpha == doctest::Approx(-link_quantile(LinkKind::Probit, 1.0 / levels[j])).epsilon(1e-3));
        for (const auto& b : m.params[j].betas) {
            for (double v : b) CHECK(std::abs(v) < 1e-6);
        }
    }
    const auto joint = joint_distribution(m);
    CHECK(joint.probs[0] == doctest::Approx(1.0 / 24).epsilon(1e-5));

    for (double sigma : {0.25, 1.0, 2.5}) {
        ParameterDraw how;
        how.sigma = sigma;
        const auto model = draw_parameters(g, {4, 3, 5}, how, rng);
        for (int j = 0; j < 3; ++j) {
            CHECK(model.specs[j].parents == g.parents(j));
            double prev = 0;
            for (double v : model.params[j].gammas) {
                CHECK(v > prev);
                prev = v;
            }
        }
        const auto d = sample(model, 10000, rng);
        for (int j = 0; j < 3; ++j) {
            std::vector<int> counts(d.levels(j), 0);
            for (int v : d.column(j)) ++counts[v - 1];
            for (int c : counts) CHECK(std::abs(c / 10000.0 - 1.0 / d.levels(j)) <= 0.03);
        }
    }
}

TEST_CASE("draw_parameters snapshot") {
    Rng rng(20240101);
    const Dag g(3, std::vector<Edge>{{0, 1}, {1, 2}});
    ParameterDraw how;
    const auto m = draw_parameters(g, {3, 3, 3}, how, rng);
    std::ostringstream out;
    out.precision(10);
    for (int j = 0; j < 3; ++j) {
        out << m.params[j].alpha;
        for (const auto& b : m.params[j].betas) {
            for (double v : b) out << ' ' << v;
        }
        for (double v : m.params[j].gammas) out << ' ' << v;
        out << ';';
    }
    CHECK(out.str() ==
          "0.4307272993 0.8614545986;0.6397518645 -1.013581704 0.6611297281 1.070676571;"
          "-0.1980419191 1.255876648 0.7833896082 0.9794414486;");
}

TEST_CASE("sampling matches the analytic joint") {
    Rng rng(4);
    const auto truth = reference_pair_model();
    CHECK(total_variation(empirical_joint(sample(truth, 100000, rng)), joint_distribution(truth)) <= 0.01);

    for (int rep = 0; rep < 5; ++rep) {
        const int p = 2 + static_cast<int>(rng.uniform_index(2));
        const Dag g = random_dag(p, static_cast<int>(rng.uniform_index(p * (p - 1) / 2 + 1)), rng);
        std::vector<int> levels(p);
        for (auto& l : levels) l = 2 + static_cast<int>(rng.uniform_index(2));
        ParameterDraw how;
        how.sigma = 1.0;
        how.presample = 2000;
        const auto model = draw_parameters(g, levels, how, rng);
        CHECK(total_variation(empirical_joint(sample(model, 100000, rng)), joint_distribution(model)) <= 0.01);
    }
}

TEST_CASE("empty graph yields independent columns") {
    Rng rng(5);
    ParameterDraw how;
    how.presample = 2000;
    const auto model = draw_parameters(Dag(2), {3, 4}, how, rng);
    const double critical = boost::math::quantile(boost::math::chi_squared(6), 0.99);
    int accepted = 0;
    const int repeats = 100;
    for (int rep = 0; rep < repeats; ++rep) {
        const auto d = sample(model, 500, rng);
        double table[3][4] = {};
        double rows[3] = {}, cols[4] = {};
        for (std::size_t i = 0; i < d.num_rows(); ++i) {
            table[d.at(i, 0) - 1][d.at(i, 1) - 1] += 1;
            rows[d.at(i, 0) - 1] += 1;
            cols[d.at(i, 1) - 1] += 1;
        }
        double chi2 = 0;
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 4; ++b) {
                const double e = rows[a] * cols[b] / 500.0;
                chi2 += (table[a][b] - e) * (table[a][b] - e) / e;
            }
        }
        accepted += chi2 < critical;
    }
    CHECK(accepted >= 95);
}

TEST_CASE("seeded determinism") {
    const Dag g(4, std::vector<Edge>{{0, 1}, {1, 2}, {0, 3}});
    ParameterDraw how;
    how.presample = 3000;
    auto run = [&] {
        Rng rng(99);
        const auto m = draw_parameters(g, {3, 3, 2, 4}, how, rng);
        return csv_bytes(sample(m, 200, rng));
    };
    CHECK(run() == run());
    Rng a(5), b(5);
    CHECK(a.split(3).next_u64() == b.split(3).next_u64());
    a.next_u64();
    CHECK(a.split(3).next_u64() == b.split(3).next_u64());
    CHECK(a.split(3).next_u64() != a.split(4).next_u64());
}

TEST_CASE("confounder scenario") {
    Rng rng(6);
    const auto s = confounder_scenario(1.5, 300, rng);
    CHECK(s.data.num_columns() == 2);
    CHECK(s.data.levels() == std::vector<int>{5, 5});
    CHECK(s.cause == 0);
    CHECK(s.model.graph.num_edges() == 3);
    // One effect vector on every edge.
    const auto& b_x1 = s.model.params[0].betas[0];
    for (int j : {1}) {
        for (const auto& b : s.model.params[j].betas) CHECK(b == b_x1);
    }

    const auto pair = bivariate_scenario(5, 4, 1.0, 200, rng);
    CHECK(pair.data.levels() == std::vector<int>{5, 4});
    CHECK(pair.cause == 0);
}
