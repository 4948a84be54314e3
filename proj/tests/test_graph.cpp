#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "tangles/graph.hpp"

using namespace tangles;

namespace {

Dataset points_1d(const std::vector<double>& xs) {
    Dataset ds;
    ds.d = 1;
    ds.n = static_cast<long long>(xs.size());
    ds.values = xs;
    return ds;
}

WeightedGraph random_graph(int n, double edge_prob, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    WeightedGraph g = WeightedGraph::sparse(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (unif(gen) < edge_prob) g.add_edge(i, j, 0.1 + unif(gen));
    g.finalize();
    return g;
}

}  // namespace

TEST_CASE("delta graph edges follow the distance threshold exactly") {
    const Dataset close = points_1d({0.0, 0.9});
    const WeightedGraph g1 = build_graph(close, WeightModel::delta(1.0));
    REQUIRE(g1.weight(0, 1) == 1.0);

    const Dataset far = points_1d({0.0, 1.1});
    const WeightedGraph g2 = build_graph(far, WeightModel::delta(1.0));
    REQUIRE_FALSE(g2.has_edge(0, 1));

    // Boundary: exactly delta is an edge.
    const Dataset at = points_1d({0.0, 1.0});
    REQUIRE(build_graph(at, WeightModel::delta(1.0)).has_edge(0, 1));
}

TEST_CASE("kernel graph weighs every pair") {
    Dataset ds;
    ds.d = 2;
    ds.n = 3;
    ds.values = {0.0, 0.0, 1.0, 1.0, 5.0, 5.0};
    const WeightedGraph g = build_graph(ds, WeightModel::kernel(1.0));
    // Distance sqrt(2) with c = 1: weight e^{-1}, frozen value.
    REQUIRE(g.weight(0, 1) == Catch::Approx(0.36787944117144233).epsilon(1e-14));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            REQUIRE(g.weight(i, j) > 0.0);
            REQUIRE(g.weight(i, j) <= 1.0);
        }
}

TEST_CASE("vertices_in selects exactly the member columns") {
    const Dataset ds = points_1d({-1.0, 0.5, 2.0});
    const auto everything = region::complement(region::box({9.0}, {9.0}));
    REQUIRE(vertices_in(ds, *everything) == std::vector<int>{0, 1, 2});
    const auto nothing = region::interval(10.0, 11.0);
    REQUIRE(vertices_in(ds, *nothing).empty());
    const auto lower = region::halfspace({1.0}, 1.0);
    REQUIRE(vertices_in(ds, *lower) == std::vector<int>{0, 1});
}

TEST_CASE("edge connectivity: normalization, symmetry, hand-counted triangle") {
    WeightedGraph tri = WeightedGraph::sparse(3);
    tri.add_edge(0, 1, 1.0);
    tri.add_edge(0, 2, 1.0);
    tri.add_edge(1, 2, 1.0);
    tri.finalize();
    REQUIRE(edge_connectivity(tri, std::vector<int>{}) == 0.0);
    REQUIRE(edge_connectivity(tri, std::vector<int>{0, 1, 2}) == 0.0);
    REQUIRE(edge_connectivity(tri, std::vector<int>{0}) == 2.0);

    std::mt19937_64 gen(11);
    for (int rep = 0; rep < 20; ++rep) {
        const WeightedGraph g = random_graph(10, 0.4, gen);
        std::vector<int> s;
        std::vector<int> comp;
        std::uniform_int_distribution<int> coin(0, 1);
        for (int v = 0; v < 10; ++v) (coin(gen) ? s : comp).push_back(v);
        REQUIRE(edge_connectivity(g, s) == Catch::Approx(edge_connectivity(g, comp)).margin(1e-12));
    }
}

TEST_CASE("edge connectivity is submodular") {
    std::mt19937_64 gen(23);
    // Exhaustive on n <= 8.
    for (int rep = 0; rep < 6; ++rep) {
        const int n = 5 + rep % 4;
        const WeightedGraph g = random_graph(n, 0.5, gen);
        const auto edges = g.edges();
        const uint32_t total = 1u << n;
        for (uint32_t s = 0; s < total; ++s)
            for (uint32_t t = s; t < total; ++t) {
                const double lhs =
                    edge_connectivity_bits(edges, s) + edge_connectivity_bits(edges, t);
                const double rhs = edge_connectivity_bits(edges, s & t) +
                                   edge_connectivity_bits(edges, s | t);
                REQUIRE(lhs >= rhs - 1e-9);
            }
    }
    // Sampled on n = 12.
    const WeightedGraph g = random_graph(12, 0.3, gen);
    const auto edges = g.edges();
    std::uniform_int_distribution<uint32_t> mask(0, (1u << 12) - 1);
    for (int rep = 0; rep < 20000; ++rep) {
        const uint32_t s = mask(gen), t = mask(gen);
        const double lhs = edge_connectivity_bits(edges, s) + edge_connectivity_bits(edges, t);
        const double rhs =
            edge_connectivity_bits(edges, s & t) + edge_connectivity_bits(edges, s | t);
        REQUIRE(lhs >= rhs - 1e-9);
    }
}

TEST_CASE("min clique weight and the empty-edge convention") {
    WeightedGraph g = WeightedGraph::sparse(4);
    g.add_edge(0, 1, 0.5);
    g.add_edge(0, 2, 0.2);
    g.add_edge(1, 2, 0.9);
    g.finalize();
    REQUIRE(min_clique_weight(g, {3}) == 1.0);            // |W| = 1
    REQUIRE(min_clique_weight(g, {0, 1, 2}) == 0.2);
    REQUIRE(min_clique_weight(g, {0, 3}) == 1.0);         // no spanned edge

    // Kernel graph: two points at distance c*sqrt(2) give min weight e^{-1}.
    Dataset ds;
    ds.d = 1;
    ds.n = 2;
    ds.values = {0.0, std::numbers::sqrt2};
    const WeightedGraph kg = build_graph(ds, WeightModel::kernel(1.0));
    REQUIRE(min_clique_weight(kg, {0, 1}) == Catch::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("clique tangle test on the unit triangle") {
    WeightedGraph tri = WeightedGraph::sparse(3);
    tri.add_edge(0, 1, 1.0);
    tri.add_edge(0, 2, 1.0);
    tri.add_edge(1, 2, 1.0);
    tri.finalize();
    const std::vector<int> w{0, 1, 2};

    const auto full = clique_tangle_test(tri, w, {0, 1, 2});
    REQUIRE(full.order == Catch::Approx(2.0));
    REQUIRE(full.is_tangle_nonempty);
    REQUIRE(full.contains_S);  // kappa = 0 < 2 and 3 > 0

    // kappa of a single triangle vertex is 2, not below the order.
    const auto single = clique_tangle_test(tri, w, {0});
    REQUIRE_FALSE(single.contains_S);

    const auto lone = clique_tangle_test(tri, {1}, {0, 1, 2});
    REQUIRE_FALSE(lone.is_tangle_nonempty);

    WeightedGraph path = WeightedGraph::sparse(3);
    path.add_edge(0, 1, 1.0);
    path.add_edge(1, 2, 1.0);
    path.finalize();
    REQUIRE_THROWS_AS(clique_tangle_test(path, {0, 1, 2}, {0}), NonCliqueError);
}

TEST_CASE("graph dump emits one line per edge") {
    WeightedGraph g = WeightedGraph::sparse(3);
    g.add_edge(0, 2, 0.25);
    g.add_edge(0, 1, 1.0);
    g.finalize();
    std::ostringstream os;
    dump_edge_list(g, os);
    REQUIRE(os.str() == "0 1 1\n0 2 0.25\n");
}
