#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "ocd/error.hpp"
#include "ocd/graph.hpp"
#include "ocd/graph_io.hpp"
#include "ocd/rng.hpp"
#include "ocd/simulate.hpp"
#include "test_support.hpp"

using namespace ocd;
using ocd::testing::make_dag;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an ocd::Error");
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("parents") {
    CHECK(make_dag(2, {{0, 1}}).parents(1) == std::vector<NodeId>{0});
    CHECK(make_dag(2, {{0, 1}}).parents(0).empty());
    CHECK(make_dag(3, {{0, 2}, {1, 2}}).parents(2) == std::vector<NodeId>{0, 1});
    CHECK(kind_of([] { return make_dag(2, {}).parents(2); }) == ErrorKind::InvalidNode);
}

TEST_CASE("is_acyclic") {
    const std::vector<Edge> chain{{0, 1}, {1, 2}};
    const std::vector<Edge> two_cycle{{0, 1}, {1, 0}};
    const std::vector<Edge> three_cycle{{0, 1}, {1, 2}, {2, 0}};
    CHECK(is_acyclic(3, chain));
    CHECK_FALSE(is_acyclic(2, two_cycle));
    CHECK_FALSE(is_acyclic(3, three_cycle));
}

TEST_CASE("construction rejects invalid edge sets") {
    CHECK(kind_of([] { return make_dag(2, {{0, 0}}); }) == ErrorKind::InvalidNode);
    CHECK(kind_of([] { return make_dag(2, {{0, 1}, {1, 0}}); }) == ErrorKind::InapplicableMove);
    CHECK(kind_of([] { return make_dag(3, {{0, 1}, {1, 2}, {2, 0}}); }) == ErrorKind::WouldCreateCycle);
}

TEST_CASE("apply_move") {
    CHECK(apply_move(make_dag(2, {{0, 1}}), {MoveKind::Reverse, {0, 1}}) == make_dag(2, {{1, 0}}));
    CHECK(apply_move(make_dag(2, {}), {MoveKind::Add, {0, 1}}) == make_dag(2, {{0, 1}}));
    const Dag chain = make_dag(3, {{0, 1}, {1, 2}});
    CHECK(kind_of([&] { return apply_move(chain, {MoveKind::Add, {2, 0}}); }) ==
          ErrorKind::WouldCreateCycle);
    CHECK(kind_of([&] { return apply_move(chain, {MoveKind::Add, {0, 1}}); }) ==
          ErrorKind::InapplicableMove);
    CHECK(kind_of([&] { return apply_move(chain, {MoveKind::Delete, {0, 2}}); }) ==
          ErrorKind::InapplicableMove);
    // 0->1->2 plus 0->2: reversing 0->2 closes 0->1->2->0.
    const Dag triangle = make_dag(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(kind_of([&] { return apply_move(triangle, {MoveKind::Reverse, {0, 2}}); }) ==
          ErrorKind::WouldCreateCycle);
}

TEST_CASE("legal_moves examples") {
    using M = std::vector<Move>;
    CHECK(legal_moves(make_dag(2, {})) == M{{MoveKind::Add, {0, 1}}, {MoveKind::Add, {1, 0}}});
    CHECK(legal_moves(make_dag(2, {{0, 1}})) ==
          M{{MoveKind::Delete, {0, 1}}, {MoveKind::Reverse, {0, 1}}});
    const auto moves = legal_moves(make_dag(3, {{0, 1}, {1, 2}}));
    CHECK(std::find(moves.begin(), moves.end(), Move{MoveKind::Add, {0, 2}}) != moves.end());
    CHECK(std::find(moves.begin(), moves.end(), Move{MoveKind::Add, {2, 0}}) == moves.end());
}

TEST_CASE("legal_moves respects the parent cap") {
    const Dag g = make_dag(3, {{0, 2}});
    for (const Move& m : legal_moves(g, 1)) {
        const Dag next = apply_move(g, m);
        for (NodeId j = 0; j < 3; ++j) CHECK(next.parents(j).size() <= 1);
    }
    const auto none = legal_moves(make_dag(3, {}), 0);
    CHECK(none.empty());
}

TEST_CASE("enumerate_dags matches brute force over all digraphs") {
    for (int p = 1; p <= 4; ++p) {
        std::vector<Edge> all;
        for (int a = 0; a < p; ++a) {
            for (int b = 0; b < p; ++b) {
                if (a != b) all.push_back({a, b});
            }
        }
        std::size_t expected = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
            std::vector<Edge> edges;
            for (std::size_t k = 0; k < all.size(); ++k) {
                if (mask >> k & 1) edges.push_back(all[k]);
            }
            expected += ocd::testing::brute_force_acyclic(p, edges);
        }
        const auto dags = enumerate_dags(p);
        CHECK(dags.size() == expected);
        std::set<std::vector<Edge>> distinct;
        for (const Dag& g : dags) {
            const auto edges = g.edges();
            CHECK(is_acyclic(p, edges));
            distinct.insert(edges);
        }
        CHECK(distinct.size() == dags.size());
        CHECK(std::is_sorted(dags.begin(), dags.end(), canonical_less));
    }
    CHECK(enumerate_dags(1).size() == 1);
    CHECK(enumerate_dags(2).size() == 3);
    CHECK(enumerate_dags(3).size() == 25);
    CHECK(enumerate_dags(4).size() == 543);
    CHECK(kind_of([] { return enumerate_dags(5); }) == ErrorKind::TooManyNodes);
}

TEST_CASE("move properties on random graphs") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int p = 2 + static_cast<int>(rng.uniform_index(6));
        const int max_edges = p * (p - 1) / 2;
        const Dag g = random_dag(p, static_cast<int>(rng.uniform_index(max_edges + 1)), rng);
        const auto moves = legal_moves(g);

        CHECK(std::adjacent_find(moves.begin(), moves.end(), std::greater_equal<>()) == moves.end());
        CHECK(moves.size() <= static_cast<std::size_t>(p * (p - 1)) + 2 * g.num_edges());

        std::set<std::vector<Edge>> seen;
        for (const Move& m : moves) {
            const Dag next = apply_move(g, m);
            CHECK(is_acyclic(p, next.edges()));
            CHECK(std::abs(static_cast<int>(next.num_edges()) - static_cast<int>(g.num_edges())) <= 1);
            seen.insert(next.edges());
            CHECK(apply_move(next, inverse(m)) == g);
        }
        CHECK(seen.size() == moves.size());
    }
}
