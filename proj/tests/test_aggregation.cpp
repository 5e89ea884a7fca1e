#include <gtest/gtest.h>

#include "mln/aggregation.hpp"
#include "support/fixtures.hpp"

using namespace mln;
using namespace mln::testing;

TEST(Aggregate, M1UnionAndIntersection) {
    auto o = aggregate(m1_x(), m1_y(), BoolOp::Or);
    EXPECT_EQ(o.edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 2}}));
    auto a = aggregate(m1_x(), m1_y(), BoolOp::And);
    EXPECT_EQ(a.edges(), (std::vector<Edge>{{0, 1}}));
    EXPECT_TRUE(is_valid_simple_graph(o));
    EXPECT_TRUE(is_valid_simple_graph(a));
}

TEST(Aggregate, Idempotent) {
    auto x = m2_x();
    EXPECT_EQ(aggregate(x, x, BoolOp::Or), x);
    EXPECT_EQ(aggregate(x, x, BoolOp::And), x);
}

TEST(Aggregate, MismatchedN) { EXPECT_THROW(aggregate(m1_x(), graph(5, {}), BoolOp::Or), DataError); }

TEST(Aggregate, RandomProperties) {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        auto mln = random_mln(rng, 80);
        const auto& x = mln.layer(0).graph;
        const auto& y = mln.layer(1).graph;
        const std::size_t n = mln.num_vertices();
        auto o = aggregate(x, y, BoolOp::Or, 1 + trial % 3);
        auto a = aggregate(x, y, BoolOp::And, 1 + trial % 3);
        ASSERT_EQ(o, aggregate(y, x, BoolOp::Or));
        ASSERT_EQ(a, aggregate(y, x, BoolOp::And));
        ASSERT_TRUE(is_valid_simple_graph(o) && is_valid_simple_graph(a));
        ASSERT_LE(a.num_edges(), std::min(x.num_edges(), y.num_edges()));
        ASSERT_LE(std::max(x.num_edges(), y.num_edges()), o.num_edges());
        ASSERT_LE(o.num_edges(), x.num_edges() + y.num_edges());
        for (VertexId u = 0; u < n; ++u) {
            const std::uint32_t dx = x.degree(u), dy = y.degree(u);
            ASSERT_LE(std::max(dx, dy), o.degree(u));
            ASSERT_LE(o.degree(u), std::min<std::uint64_t>(dx + dy, n - 1));
            ASSERT_LE(a.degree(u), std::min(dx, dy));
        }
        for (auto [u, v] : o.edges()) ASSERT_TRUE(x.has_edge(u, v) || y.has_edge(u, v));
        for (auto [u, v] : a.edges()) ASSERT_TRUE(x.has_edge(u, v) && y.has_edge(u, v));

        // Distance monotonicity under AND (unreachable = n).
        auto sx = analyze_closeness(x), sy = analyze_closeness(y), sa = analyze_closeness(a);
        for (VertexId u = 0; u < n; ++u) ASSERT_GE(sa.sum_dist[u], std::max(sx.sum_dist[u], sy.sum_dist[u]));
    }
}

TEST(GroundTruth, M1Hubs) {
    auto gt = ground_truth_degree_hubs(m1_x(), m1_y());
    EXPECT_EQ(gt.hubs, (VertexSet{0, 1, 2}));
    EXPECT_DOUBLE_EQ(gt.avg_deg(), 2.0);
    EXPECT_EQ(gt.aggregated_edges, 4u);
    EXPECT_GE(gt.total_ms(), 0.0);
}

TEST(GroundTruth, DegreeTrivia) {
    auto tri = graph(3, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(ground_truth_degree_hubs(tri, tri).hubs, (VertexSet{0, 1, 2}));
    EXPECT_EQ(ground_truth_degree_hubs(m1_x(), graph(4, {})).hubs, analyze_degree(m1_x()).hubs);
}

TEST(GroundTruth, M2CcNodes) {
    auto gt = ground_truth_cc_nodes(m2_x(), m2_y());
    EXPECT_EQ(gt.aggregated_edges, 2u);
    const auto& cc = gt.aggregated.cc_value;
    EXPECT_DOUBLE_EQ(cc[0], 4.0 / 9.0);
    EXPECT_DOUBLE_EQ(cc[1], 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(cc[2], 4.0 / 9.0);
    EXPECT_EQ(cc[3], 0.0);
    EXPECT_NEAR((cc[0] + cc[1] + cc[2] + cc[3]) / 4.0, 0.3889, 1e-4);
    EXPECT_EQ(gt.cc_nodes, (VertexSet{0, 1, 2}));
}

TEST(GroundTruth, ClosenessTrivia) {
    auto path = graph(3, {{0, 1}, {1, 2}});
    EXPECT_EQ(ground_truth_cc_nodes(path, path).cc_nodes, (VertexSet{1}));
    auto gt = ground_truth_cc_nodes(m1_x(), graph(4, {{1, 2}, {2, 3}}));
    EXPECT_EQ(gt.aggregated_edges, 0u);
    EXPECT_EQ(gt.cc_nodes, (VertexSet{0, 1, 2, 3}));
}

TEST(BruteForce, M1AndM2) {
    auto m1 = pair_mln(m1_x(), m1_y());
    auto r = brute_force_check(m1, {0, 1}, CentralityKind::Degree);
    EXPECT_EQ(r.truth, (VertexSet{0, 1, 2}));
    EXPECT_TRUE(r.oracles_agree());
    EXPECT_EQ(r.heuristic_missing, (VertexSet{2}));
    EXPECT_TRUE(r.heuristic_extra.empty());

    auto m2 = pair_mln(m2_x(), m2_y());
    auto c = brute_force_check(m2, {0, 1, 2}, CentralityKind::Closeness);
    EXPECT_EQ(c.truth, (VertexSet{0, 1, 2}));
    EXPECT_TRUE(c.empty());
}

TEST(BruteForce, EmptyNetwork) {
    auto mln = pair_mln(graph(0, {}), graph(0, {}));
    EXPECT_TRUE(brute_force_check(mln, {}, CentralityKind::Degree).empty());
    EXPECT_TRUE(brute_force_check(mln, {}, CentralityKind::Closeness).empty());
}

TEST(BruteForce, Guards) {
    auto big = pair_mln(graph(11, {}), graph(11, {}));
    EXPECT_THROW(brute_force_check(big, {}, CentralityKind::Degree, 10), UsageError);
    EXPECT_THROW(brute_force_check(build_mln({{"L1", m1_x()}}), {}, CentralityKind::Degree), UsageError);
}

TEST(BruteForce, AgreesWithFastOracleOnRandomNetworks) {
    Rng rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
        auto mln = random_mln(rng, 60);
        ASSERT_TRUE(brute_force_check(mln, {}, CentralityKind::Degree).oracles_agree()) << trial;
        ASSERT_TRUE(brute_force_check(mln, {}, CentralityKind::Closeness).oracles_agree()) << trial;
    }
}
