#include <gtest/gtest.h>

#include "mln/layer_analysis.hpp"
#include "mln/psi_artifact.hpp"
#include "mln/selection.hpp"
#include "support/fixtures.hpp"

using namespace mln;
using namespace mln::testing;

TEST(AnalyzeDegree, Star) {
    auto s = analyze_degree(m1_x());
    EXPECT_EQ(s.deg, (std::vector<std::uint32_t>{3, 1, 1, 1}));
    EXPECT_DOUBLE_EQ(s.avg_deg(), 1.5);
    EXPECT_EQ(s.hubs, (VertexSet{0}));
    EXPECT_FALSE(s.hub_neighborhoods.has_value());
    EXPECT_FALSE(s.full_neighborhoods.has_value());
}

TEST(AnalyzeDegree, EmptyAndTriangle) {
    EXPECT_EQ(analyze_degree(graph(3, {})).hubs, (VertexSet{0, 1, 2}));
    auto tri = analyze_degree(graph(3, {{0, 1}, {1, 2}, {0, 2}}));
    EXPECT_EQ(tri.deg, (std::vector<std::uint32_t>{2, 2, 2}));
    EXPECT_EQ(tri.hubs, (VertexSet{0, 1, 2}));
    EXPECT_EQ(analyze_degree(graph(0, {})).hubs, VertexSet{});
}

TEST(AnalyzeDegree, HubNeighborhoods) {
    auto s = analyze_degree(m1_y(), RetentionPolicy::hubs_only(), "y");
    EXPECT_EQ(s.layer_name, "y");
    EXPECT_EQ(s.hubs, (VertexSet{0, 1, 2}));
    ASSERT_TRUE(s.hub_neighborhoods.has_value());
    EXPECT_EQ(s.hub_neighborhoods->size(), 3u);
    auto n1 = *s.hub_neighborhoods->find(1);
    EXPECT_EQ(std::vector<VertexId>(n1.begin(), n1.end()), (std::vector<VertexId>{0, 2}));
    EXPECT_FALSE(s.hub_neighborhoods->find(3).has_value());
}

TEST(AnalyzeDegree, RetentionPolicies) {
    auto all = analyze_degree(m1_x(), RetentionPolicy::all());
    ASSERT_TRUE(all.full_neighborhoods && all.hub_neighborhoods);
    EXPECT_EQ(all.full_neighborhoods->size(), 4u);

    auto half = analyze_degree(m1_x(), RetentionPolicy::sample(0.5, 9));
    ASSERT_TRUE(half.full_neighborhoods.has_value());
    EXPECT_EQ(half.full_neighborhoods->size(), 2u);
    EXPECT_FALSE(half.hub_neighborhoods.has_value());

    EXPECT_THROW(RetentionPolicy::sample(1.5, 0), UsageError);
    EXPECT_EQ(RetentionPolicy::parse("fraction:0.25", 4), RetentionPolicy::sample(0.25, 4));
    EXPECT_EQ(RetentionPolicy::parse("hubs"), RetentionPolicy::hubs_only());
    EXPECT_EQ(RetentionPolicy::sample(0.25, 4).to_string(), "fraction:0.25");
    EXPECT_THROW(RetentionPolicy::parse("most"), UsageError);
}

TEST(RetainedSubset, SizeAndNesting) {
    for (std::size_t n : {1u, 7u, 100u, 1001u}) {
        VertexSet prev;
        for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            auto s = retained_subset(n, f, 42);
            EXPECT_EQ(s.size(), static_cast<std::size_t>(std::ceil(f * static_cast<double>(n))));
            EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
            EXPECT_TRUE(std::includes(s.begin(), s.end(), prev.begin(), prev.end()));
            prev = s;
        }
    }
    EXPECT_EQ(retained_subset(100, 0.3, 1), retained_subset(100, 0.3, 1));
    EXPECT_NE(retained_subset(100, 0.3, 1), retained_subset(100, 0.3, 2));
}

TEST(AnalyzeCloseness, Path) {
    auto s = analyze_closeness(graph(3, {{0, 1}, {1, 2}}));
    EXPECT_EQ(s.sum_dist, (std::vector<std::uint64_t>{3, 2, 3}));
    EXPECT_DOUBLE_EQ(s.cc_value[0], 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(s.cc_value[1], 1.0);
    EXPECT_DOUBLE_EQ(s.cc_value[2], 2.0 / 3.0);
    EXPECT_EQ(s.cc_nodes, (VertexSet{1}));
}

TEST(AnalyzeCloseness, IsolatedVertex) {
    auto s = analyze_closeness(graph(4, {{0, 1}, {1, 2}}));
    EXPECT_EQ(s.sum_dist, (std::vector<std::uint64_t>{7, 6, 7, 12}));
    EXPECT_EQ(s.cc_value[3], 0.0);
    EXPECT_EQ(s.component_size, (std::vector<std::uint32_t>{3, 3, 3, 1}));
    // W-F: ((r-1)/(n-1)) * ((r-1)/sum) with r = 3, n = 4.
    EXPECT_DOUBLE_EQ(s.cc_value[0], (2.0 / 3.0) * (2.0 / 3.0));
    EXPECT_DOUBLE_EQ(s.cc_value[1], (2.0 / 3.0) * 1.0);
    EXPECT_EQ(s.cc_nodes, (VertexSet{0, 1, 2}));
}

TEST(AnalyzeCloseness, CompleteGraph) {
    auto s = analyze_closeness(graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
    EXPECT_EQ(s.sum_dist, (std::vector<std::uint64_t>{3, 3, 3, 3}));
    for (double v : s.cc_value) EXPECT_EQ(v, 1.0);
    EXPECT_EQ(s.cc_nodes, (VertexSet{0, 1, 2, 3}));
}

TEST(AnalyzeCloseness, M2Layers) {
    auto x = analyze_closeness(m2_x());
    auto y = analyze_closeness(m2_y());
    EXPECT_EQ(x.sum_dist, (std::vector<std::uint64_t>{6, 4, 4, 6}));
    EXPECT_EQ(y.sum_dist, (std::vector<std::uint64_t>{5, 3, 5, 5}));
    EXPECT_EQ(x.cc_nodes, (VertexSet{1, 2}));
    EXPECT_EQ(y.cc_nodes, (VertexSet{1}));
    ASSERT_TRUE(x.cc_neighborhoods.has_value());
    EXPECT_EQ(x.cc_neighborhoods->size(), 2u);
}

TEST(AnalyzeCloseness, EdgeCases) {
    auto empty = analyze_closeness(graph(0, {}));
    EXPECT_TRUE(empty.cc_nodes.empty());
    auto single = analyze_closeness(graph(1, {}));
    EXPECT_EQ(single.sum_dist, (std::vector<std::uint64_t>{0}));
    EXPECT_EQ(single.cc_nodes, (VertexSet{0}));
    auto none = analyze_closeness(graph(3, {}));
    EXPECT_EQ(none.sum_dist, (std::vector<std::uint64_t>{6, 6, 6}));
    EXPECT_EQ(none.cc_nodes, (VertexSet{0, 1, 2}));
}

TEST(AnalyzeCloseness, RandomInvariants) {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(60);
        auto g = random_layer(rng, n, rng.uniform() * 0.15);
        auto s = analyze_closeness(g);
        std::uint64_t total = 0;
        for (VertexId u = 0; u < n; ++u) {
            ASSERT_GE(s.sum_dist[u], s.deg[u]);
            total += s.sum_dist[u];
            if (s.deg[u] == 0) {
                ASSERT_EQ(s.sum_dist[u], (n - 1) * n);
                ASSERT_EQ(s.cc_value[u], 0.0);
                ASSERT_EQ(s.component_size[u], 1u);
            }
            if (s.component_size[u] == n) {
                ASSERT_DOUBLE_EQ(s.cc_value[u], static_cast<double>(n - 1) / static_cast<double>(s.sum_dist[u]));
            }
        }
        // Unreachable ordered pairs: sum over u of (n - r(u)).
        std::uint64_t unreachable = 0;
        for (VertexId u = 0; u < n; ++u) unreachable += n - s.component_size[u];
        ASSERT_EQ((total - unreachable * n) % 2, 0u);
        ASSERT_EQ(s.cc_nodes, select_at_or_above_mean(std::span<const double>(s.cc_value)));
    }
}

TEST(AnalyzeLayers, ParallelMatchesSequential) {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        auto mln = random_mln(rng, 120);
        for (auto kind : {AnalysisKind::Degree, AnalysisKind::Closeness}) {
            const auto policy = RetentionPolicy::all();
            auto seq = analyze_layers(mln, kind, policy, 1);
            auto par = analyze_layers(mln, kind, policy, 4);
            ASSERT_EQ(seq.summaries, par.summaries) << "trial " << trial;
            ASSERT_EQ(seq.psi_time_ms.size(), 2u);
            ASSERT_GE(seq.max_psi_time_ms(), 0.0);
            if (kind == AnalysisKind::Degree) {
                ASSERT_EQ(seq.degree()[0], analyze_degree(mln.layer(0).graph, policy, "L1"));
            } else {
                ASSERT_EQ(seq.closeness()[1], analyze_closeness(mln.layer(1).graph, 1, "L2"));
            }
        }
    }
}

TEST(AnalyzeLayers, WrongKindAccessorThrows) {
    auto mln = pair_mln(m1_x(), m1_y());
    auto a = analyze_layers(mln, AnalysisKind::Degree);
    EXPECT_EQ(a.degree().size(), 2u);
    EXPECT_THROW(a.closeness(), UsageError);
}

TEST(HubRule, ExactIntegerComparison) {
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(50);
        auto s = analyze_degree(random_layer(rng, n, rng.uniform() * 0.4));
        VertexSet expect;
        for (VertexId u = 0; u < n; ++u) {
            if (static_cast<std::uint64_t>(s.deg[u]) * n >= s.degree_sum) expect.push_back(u);
        }
        ASSERT_EQ(s.hubs, expect);
    }
}

TEST(PsiArtifact, RoundTrip) {
    auto dir = scratch_dir("psi");
    Rng rng(31);
    auto g = random_layer(rng, 40, 0.1);
    for (const auto& policy : {RetentionPolicy::none(), RetentionPolicy::hubs_only(), RetentionPolicy::all(),
                               RetentionPolicy::sample(1.0 / 3.0, 5)}) {
        LayerSummary s = analyze_degree(g, policy, "L1");
        write_psi_artifact(dir / "d.json", s);
        EXPECT_EQ(read_psi_artifact(dir / "d.json"), s) << policy.to_string();
    }
    LayerSummary c = analyze_closeness(g, 1, "L2");
    write_psi_artifact(dir / "c.json", c);
    EXPECT_EQ(read_psi_artifact(dir / "c.json"), c);
}

TEST(PsiArtifact, RejectsForeignAndBroken) {
    EXPECT_THROW(summary_from_json({{"format", "other"}}), DataError);
    auto j = to_json(analyze_degree(m1_x()));
    j["version"] = 99;
    EXPECT_THROW(summary_from_json(j), DataError);
    j = to_json(analyze_degree(m1_x()));
    j["deg"] = {1, 2};
    EXPECT_THROW(summary_from_json(j), DataError);
    EXPECT_THROW(read_psi_artifact("/nonexistent/psi.json"), DataError);
}

TEST(PsiArtifact, WithoutDegrees) {
    auto j = to_json(analyze_degree(m1_x(), RetentionPolicy::hubs_only()), {.include_degrees = false});
    auto s = std::get<DegreeSummary>(summary_from_json(j));
    EXPECT_TRUE(s.deg.empty());
    EXPECT_EQ(s.hubs, (VertexSet{0}));
    EXPECT_DOUBLE_EQ(s.avg_deg(), 1.5);
}
