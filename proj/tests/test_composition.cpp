#include <gtest/gtest.h>

#include <cmath>

#include "mln/aggregation.hpp"
#include "mln/composition.hpp"
#include "mln/metrics.hpp"
#include "support/fixtures.hpp"

using namespace mln;
using namespace mln::testing;

namespace {

struct M1 {
    DegreeSummary x = analyze_degree(m1_x(), RetentionPolicy::hubs_only(), "L1");
    DegreeSummary y = analyze_degree(m1_y(), RetentionPolicy::hubs_only(), "L2");
    VertexSet truth = ground_truth_degree_hubs(m1_x(), m1_y()).hubs;
};

struct M2 {
    ClosenessSummary x = analyze_closeness(m2_x(), 1, "L1");
    ClosenessSummary y = analyze_closeness(m2_y(), 1, "L2");
    VertexSet truth = ground_truth_cc_nodes(m2_x(), m2_y()).cc_nodes;
};

std::vector<double> est(const DegreeCompositionResult& r) {
    std::vector<double> out;
    for (std::size_t u = 0; u < r.est_deg_x2->size(); ++u) out.push_back(r.est_deg(static_cast<VertexId>(u)));
    return out;
}

}  // namespace

TEST(NaiveOr, M1) {
    M1 m;
    auto r = naive_or(m.x, m.y);
    EXPECT_EQ(r.hubs, (VertexSet{0, 1, 2}));
    EXPECT_EQ(compare_sets(r.hubs, m.truth).jaccard, 1.0);
    EXPECT_EQ(naive_or(m.x, m.x).hubs, m.x.hubs);
}

TEST(DcA1, M1) {
    M1 m;
    auto r = dc_a1(m.x, m.y);
    EXPECT_EQ(est(r), (std::vector<double>{3, 2, 1, 1}));
    EXPECT_DOUBLE_EQ(r.avg_est_deg, 1.75);
    EXPECT_EQ(r.hubs, (VertexSet{0, 1}));
    EXPECT_DOUBLE_EQ(compare_sets(r.hubs, m.truth).jaccard, 2.0 / 3.0);
}

TEST(DcA1, EmptyLayerIsIdentity) {
    auto x = analyze_degree(m1_x());
    auto e = analyze_degree(graph(4, {}));
    EXPECT_EQ(dc_a1(x, e).hubs, x.hubs);
}

TEST(DcA2, M1) {
    M1 m;
    auto r = dc_a2(m.x, m.y);
    EXPECT_EQ(est(r), (std::vector<double>{3, 2.5, 1.5, 1}));
    EXPECT_DOUBLE_EQ(r.avg_est_deg, 2.0);
    EXPECT_EQ(r.hubs, (VertexSet{0, 1}));
}

TEST(DcA2, CappedByNMinusOne) {
    auto g = graph(2, {{0, 1}});
    auto s = analyze_degree(g);
    auto r = dc_a2(s, s);
    EXPECT_EQ(r.est_deg(0), 1.0);
}

TEST(DcA2, RegularLayersIdempotent) {
    auto cycle = graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
    auto s = analyze_degree(cycle);
    EXPECT_EQ(dc_a2(s, s).hubs, ground_truth_degree_hubs(cycle, cycle).hubs);
}

TEST(DcA2Info, M1WithNode1Retained) {
    // The subset retained for vertex-count 4 at f = 0.25 under some seed is
    // exactly {1}; search for such a seed instead of hard-coding one.
    std::uint64_t seed = 0;
    while (retained_subset(4, 0.25, seed) != VertexSet{1}) ++seed;
    auto x = analyze_degree(m1_x(), RetentionPolicy::sample(0.25, seed));
    auto y = analyze_degree(m1_y(), RetentionPolicy::sample(0.25, seed));
    auto r = dc_a2_with_info(x, y, 0.25);
    EXPECT_EQ(r.est_deg(1), 2.0);
    EXPECT_EQ(r.est_deg(0), 3.0);
    EXPECT_EQ(r.est_deg(2), 1.5);
}

TEST(DcA2Info, ZeroFractionEqualsDcA2) {
    M1 m;
    auto x = analyze_degree(m1_x(), RetentionPolicy::sample(0.0, 3));
    auto y = analyze_degree(m1_y(), RetentionPolicy::sample(0.0, 3));
    auto info = dc_a2_with_info(x, y, 0.0);
    auto plain = dc_a2(m.x, m.y);
    EXPECT_EQ(info.hubs, plain.hubs);
    EXPECT_EQ(info.est_deg_x2, plain.est_deg_x2);
    // No retention at all counts as fraction 0.
    EXPECT_EQ(dc_a2_with_info(analyze_degree(m1_x()), analyze_degree(m1_y()), 0.0).hubs, plain.hubs);
}

TEST(DcA2Info, FullInformationIsExact) {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto mln = random_mln(rng, 80);
        const auto& gx = mln.layer(0).graph;
        const auto& gy = mln.layer(1).graph;
        auto x = analyze_degree(gx, RetentionPolicy::sample(1.0, 17));
        auto y = analyze_degree(gy, RetentionPolicy::sample(1.0, 17));
        ASSERT_EQ(dc_a2_with_info(x, y, 1.0).hubs, ground_truth_degree_hubs(gx, gy).hubs) << trial;
        auto ax = analyze_degree(gx, RetentionPolicy::all());
        auto ay = analyze_degree(gy, RetentionPolicy::all());
        ASSERT_EQ(dc_a2_with_info(ax, ay, 1.0).hubs, ground_truth_degree_hubs(gx, gy).hubs) << trial;
    }
}

TEST(DcA2Info, MismatchedRetentionRejected) {
    auto a = analyze_degree(m1_x(), RetentionPolicy::sample(0.5, 1));
    auto b = analyze_degree(m1_y(), RetentionPolicy::sample(0.5, 2));
    auto c = analyze_degree(m1_y(), RetentionPolicy::sample(0.25, 1));
    auto d = analyze_degree(m1_y(), RetentionPolicy::sample(0.5, 1));
    EXPECT_THROW(dc_a2_with_info(a, b, 0.5), UsageError);
    EXPECT_THROW(dc_a2_with_info(a, c, 0.5), UsageError);
    EXPECT_THROW(dc_a2_with_info(a, d, 0.25), UsageError);
    EXPECT_THROW(dc_a2_with_info(analyze_degree(m1_x(), RetentionPolicy::hubs_only()), d, 0.5), UsageError);
    EXPECT_NO_THROW(dc_a2_with_info(a, d, 0.5));
}

TEST(DcP1, M1) {
    M1 m;
    auto r = dc_p1(m.x, m.y);
    EXPECT_DOUBLE_EQ(r.avg_est_deg, 1.5);
    EXPECT_EQ(r.hubs, (VertexSet{0, 1}));
    auto c = compare_sets(r.hubs, m.truth);
    EXPECT_EQ(c.precision, 1.0);
    EXPECT_DOUBLE_EQ(c.recall, 2.0 / 3.0);
}

TEST(DcP1, BothLayersEmpty) {
    auto e = analyze_degree(graph(5, {}), RetentionPolicy::hubs_only());
    EXPECT_EQ(dc_p1(e, e).hubs, (VertexSet{0, 1, 2, 3, 4}));
}

TEST(DcP1, NeedsHubNeighborhoods) {
    auto x = analyze_degree(m1_x());
    EXPECT_THROW(dc_p1(x, x), UsageError);
    EXPECT_THROW(dc_p2(x, x), UsageError);
}

TEST(DcP2, M1) {
    M1 m;
    auto r = dc_p2(m.x, m.y);
    EXPECT_DOUBLE_EQ(r.avg_est_deg, 1.75);
    EXPECT_EQ(r.hubs, (VertexSet{0, 1}));
    EXPECT_EQ(compare_sets(r.hubs, m.truth).precision, 1.0);
}

TEST(DcP2, EmptyLayerIsIdentity) {
    Rng rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(60);
        auto gx = random_layer(rng, n, 0.1);
        auto x = analyze_degree(gx, RetentionPolicy::hubs_only());
        auto e = analyze_degree(graph(n, {}), RetentionPolicy::hubs_only());
        auto truth = ground_truth_degree_hubs(gx, graph(n, {})).hubs;
        ASSERT_EQ(dc_p2(x, e).hubs, truth);
        ASSERT_EQ(dc_a1(x, e).hubs, truth);
    }
}

TEST(DegreeMethods, MismatchedN) {
    auto a = analyze_degree(m1_x(), RetentionPolicy::hubs_only());
    auto b = analyze_degree(graph(5, {}), RetentionPolicy::hubs_only());
    EXPECT_THROW(naive_or(a, b), UsageError);
    EXPECT_THROW(dc_a1(a, b), UsageError);
    EXPECT_THROW(dc_a2(a, b), UsageError);
    EXPECT_THROW(dc_p1(a, b), UsageError);
    EXPECT_THROW(dc_p2(a, b), UsageError);
}

TEST(NaiveAnd, M2) {
    M2 m;
    auto r = naive_and_cc(m.x, m.y);
    EXPECT_EQ(r.cc_nodes, (VertexSet{1}));
    EXPECT_EQ(naive_and_cc(m.x, m.x).cc_nodes, m.x.cc_nodes);
}

TEST(Cc1, M2) {
    M2 m;
    auto r = cc1(m.x, m.y);
    EXPECT_EQ(*r.deg_dist_ratio_x, (std::vector<double>{6, 2, 4, 6}));
    EXPECT_EQ(*r.deg_dist_ratio_y, (std::vector<double>{5, 1.5, 5, 5}));
    EXPECT_DOUBLE_EQ(r.avg_deg_dist_ratio, 4.5);
    EXPECT_EQ(r.cc_nodes, (VertexSet{1}));
    EXPECT_DOUBLE_EQ(compare_sets(r.cc_nodes, m.truth).jaccard, 1.0 / 3.0);
}

TEST(Cc1, CommonNodeSwitchAndThreshold) {
    M2 m;
    EXPECT_TRUE(cc1(m.x, m.y, {2, false}).cc_nodes.empty());
    // Threshold 1 still needs a non-empty overlap; M2's is empty.
    EXPECT_EQ(cc1(m.x, m.y, {1, true}).cc_nodes, (VertexSet{1}));
}

TEST(Cc1, AddsSignificantOverlap) {
    // Wheel-like layer: hub 0 joined to a 6-cycle. Both layers identical, so
    // every central neighbor of the hub is shared.
    std::vector<Edge> e{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}};
    for (VertexId v = 1; v <= 6; ++v) e.emplace_back(0, v);
    e.emplace_back(6, 7);
    auto g = graph(8, e);
    auto s = analyze_closeness(g);
    auto r = cc1(s, s);
    EXPECT_TRUE(std::includes(r.cc_nodes.begin(), r.cc_nodes.end(), s.cc_nodes.begin(), s.cc_nodes.end()));
}

TEST(Cc1, DisjointCcSets) {
    auto x = analyze_closeness(graph(4, {{0, 1}}));
    auto y = analyze_closeness(graph(4, {{2, 3}}));
    // Both layers: component members have W-F > 0, others 0.
    ASSERT_EQ(x.cc_nodes, (VertexSet{0, 1}));
    ASSERT_EQ(y.cc_nodes, (VertexSet{2, 3}));
    EXPECT_TRUE(cc1(x, y).cc_nodes.empty());
    EXPECT_TRUE(naive_and_cc(x, y).cc_nodes.empty());
}

TEST(Cc1, ZeroMinDegreeIsInfinite) {
    auto x = analyze_closeness(graph(3, {{0, 1}}));
    auto y = analyze_closeness(graph(3, {{0, 1}, {1, 2}}));
    auto r = cc1(x, y);
    EXPECT_TRUE(std::isinf((*r.deg_dist_ratio_x)[2]));
    EXPECT_TRUE(std::isinf((*r.deg_dist_ratio_y)[2]));
}

TEST(Cc2, M2) {
    M2 m;
    auto r = cc2(m.x, m.y);
    EXPECT_EQ(*r.est_sum_dist, (std::vector<std::uint64_t>{6, 4, 5, 6}));
    EXPECT_EQ(r.cc_nodes, (VertexSet{1, 2}));
    EXPECT_DOUBLE_EQ(compare_sets(r.cc_nodes, m.truth).jaccard, 2.0 / 3.0);
}

TEST(Cc2, TakesLargerSum) {
    // Node sums 9 and 7 in the two layers: the estimate keeps 9.
    ClosenessSummary a, b;
    a.n = b.n = 2;
    a.sum_dist = {9, 1};
    b.sum_dist = {7, 3};
    auto r = cc2(a, b);
    EXPECT_EQ(*r.est_sum_dist, (std::vector<std::uint64_t>{9, 3}));
    EXPECT_EQ(r.cc_nodes, (VertexSet{1}));
}

TEST(Cc2, TopK) {
    M2 m;
    EXPECT_EQ(cc2(m.x, m.y, Cc2Selection::top_k(1)).cc_nodes, (VertexSet{1}));
    EXPECT_EQ(cc2(m.x, m.y, Cc2Selection::top_k(3)).cc_nodes, (VertexSet{0, 1, 2}));
    EXPECT_EQ(cc2(m.x, m.y, Cc2Selection::top_k(10)).cc_nodes, (VertexSet{0, 1, 2, 3}));
}

TEST(Cc2, TinyNetworks) {
    auto s = analyze_closeness(graph(1, {}));
    EXPECT_EQ(cc2(s, s).cc_nodes, (VertexSet{0}));
}

TEST(ClosenessMethods, MismatchedN) {
    auto a = analyze_closeness(m2_x());
    auto b = analyze_closeness(graph(5, {}));
    EXPECT_THROW(naive_and_cc(a, b), UsageError);
    EXPECT_THROW(cc1(a, b), UsageError);
    EXPECT_THROW(cc2(a, b), UsageError);
}

TEST(Timing, ThetaTimeRecorded) {
    M1 m;
    EXPECT_GE(dc_a2(m.x, m.y).theta_time_ms, 0.0);
    M2 c;
    EXPECT_GE(cc2(c.x, c.y).theta_time_ms, 0.0);
}
