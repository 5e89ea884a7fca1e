#include "mln/aggregation.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

#include "mln/selection.hpp"

namespace mln {
namespace {

std::size_t merged_size(std::span<const VertexId> a, std::span<const VertexId> b, BoolOp op) {
    std::size_t i = 0, j = 0, both = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++both;
            ++i;
            ++j;
        }
    }
    return op == BoolOp::And ? both : a.size() + b.size() - both;
}

VertexId* merge_into(std::span<const VertexId> a, std::span<const VertexId> b, BoolOp op, VertexId* out) {
    if (op == BoolOp::Or) return std::set_union(a.begin(), a.end(), b.begin(), b.end(), out);
    return std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), out);
}

VertexSet difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

LayerGraph aggregate(const LayerGraph& x, const LayerGraph& y, BoolOp op, unsigned threads) {
    if (x.num_vertices() != y.num_vertices()) {
        throw DataError("cannot aggregate layers with " + std::to_string(x.num_vertices()) + " and " +
                        std::to_string(y.num_vertices()) + " vertices");
    }
    const auto n = static_cast<std::int64_t>(x.num_vertices());
    const int t = static_cast<int>(std::max(1u, threads));
    std::vector<std::uint64_t> offsets(static_cast<std::size_t>(n) + 1, 0);

#pragma omp parallel for num_threads(t) schedule(static) if (t > 1)
    for (std::int64_t u = 0; u < n; ++u) {
        const auto v = static_cast<VertexId>(u);
        offsets[u + 1] = merged_size(x.neighbors(v), y.neighbors(v), op);
    }
    for (std::int64_t u = 0; u < n; ++u) offsets[u + 1] += offsets[u];

    std::vector<VertexId> neighbors(offsets.back());
#pragma omp parallel for num_threads(t) schedule(static) if (t > 1)
    for (std::int64_t u = 0; u < n; ++u) {
        const auto v = static_cast<VertexId>(u);
        merge_into(x.neighbors(v), y.neighbors(v), op, neighbors.data() + offsets[u]);
    }
    return LayerGraph::from_csr(std::move(offsets), std::move(neighbors));
}

DegreeGroundTruth ground_truth_degree_hubs(const LayerGraph& x, const LayerGraph& y, unsigned threads) {
    DegreeGroundTruth gt;
    Stopwatch agg_clock;
    const LayerGraph merged = aggregate(x, y, BoolOp::Or, threads);
    gt.aggregate_ms = agg_clock.elapsed_ms();

    Stopwatch hub_clock;
    const std::size_t n = merged.num_vertices();
    std::vector<std::uint32_t> deg(n);
    for (VertexId u = 0; u < n; ++u) deg[u] = merged.degree(u);
    gt.hubs = select_at_or_above_mean(std::span<const std::uint32_t>(deg));
    gt.centrality_ms = hub_clock.elapsed_ms();

    gt.n = n;
    gt.degree_sum = 2 * static_cast<std::uint64_t>(merged.num_edges());
    gt.aggregated_edges = merged.num_edges();
    return gt;
}

ClosenessGroundTruth ground_truth_cc_nodes(const LayerGraph& x, const LayerGraph& y, unsigned threads) {
    ClosenessGroundTruth gt;
    Stopwatch agg_clock;
    const LayerGraph merged = aggregate(x, y, BoolOp::And, threads);
    gt.aggregate_ms = agg_clock.elapsed_ms();

    Stopwatch cc_clock;
    gt.aggregated = analyze_closeness(merged, threads, "AND");
    gt.centrality_ms = cc_clock.elapsed_ms();
    gt.cc_nodes = gt.aggregated.cc_nodes;
    gt.aggregated_edges = merged.num_edges();
    return gt;
}

namespace {

/// Dense boolean adjacency matrix, row-major.
struct Matrix {
    std::size_t n;
    std::vector<std::uint8_t> cell;

    explicit Matrix(std::size_t n) : n(n), cell(n * n, 0) {}
    std::uint8_t& at(std::size_t i, std::size_t j) { return cell[i * n + j]; }
    std::uint8_t at(std::size_t i, std::size_t j) const { return cell[i * n + j]; }
};

Matrix to_matrix(const LayerGraph& g) {
    Matrix m(g.num_vertices());
    for (const auto& [u, v] : g.edges()) {
        m.at(u, v) = 1;
        m.at(v, u) = 1;
    }
    return m;
}

VertexSet matrix_degree_hubs(const Matrix& a) {
    std::vector<std::uint64_t> deg(a.n, 0);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t j = 0; j < a.n; ++j) deg[i] += a.at(i, j);
        total += deg[i];
    }
    VertexSet hubs;
    for (std::size_t i = 0; i < a.n; ++i) {
        if (deg[i] * a.n >= total) hubs.push_back(static_cast<VertexId>(i));
    }
    return hubs;
}

VertexSet matrix_cc_nodes(const Matrix& a) {
    const std::size_t n = a.n;
    constexpr std::uint32_t inf = std::numeric_limits<std::uint32_t>::max() / 4;
    std::vector<std::uint32_t> d(n * n, inf);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) d[i * n + j] = 0;
            else if (a.at(i, j)) d[i * n + j] = 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t dik = d[i * n + k];
            if (dik == inf) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const std::uint32_t via = dik + d[k * n + j];
                if (via < d[i * n + j]) d[i * n + j] = via;
            }
        }
    }

    std::vector<double> cc(n, 0.0);
    long double total = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t reach = 0, sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i * n + j] != inf) {
                ++reach;
                sum += d[i * n + j];
            }
        }
        if (reach > 1 && sum > 0) {
            const double r1 = static_cast<double>(reach - 1);
            cc[i] = (r1 / static_cast<double>(n - 1)) * (r1 / static_cast<double>(sum));
        }
        total += cc[i];
    }
    VertexSet out;
    if (n == 0) return out;
    const long double mean = total / static_cast<long double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (cc[i] >= mean - mean * kMeanTieTolerance) out.push_back(static_cast<VertexId>(i));
    }
    return out;
}

}  // namespace

DiscrepancyReport brute_force_check(const MultilayerNetwork& mln, const VertexSet& heuristic_result,
                                    CentralityKind kind, std::size_t bound) {
    if (mln.num_layers() != 2) throw UsageError("brute-force check needs exactly two layers");
    const std::size_t n = mln.num_vertices();
    if (n > bound) {
        throw UsageError("brute-force check limited to n <= " + std::to_string(bound) + " (got " + std::to_string(n) + ")");
    }
    const auto& x = mln.layer(0).graph;
    const auto& y = mln.layer(1).graph;

    const Matrix mx = to_matrix(x);
    const Matrix my = to_matrix(y);
    Matrix combined(n);
    for (std::size_t k = 0; k < n * n; ++k) {
        combined.cell[k] = kind == CentralityKind::Degree ? (mx.cell[k] | my.cell[k]) : (mx.cell[k] & my.cell[k]);
    }

    DiscrepancyReport report;
    report.kind = kind;
    VertexSet fast;
    if (kind == CentralityKind::Degree) {
        report.truth = matrix_degree_hubs(combined);
        fast = ground_truth_degree_hubs(x, y).hubs;
    } else {
        report.truth = matrix_cc_nodes(combined);
        fast = ground_truth_cc_nodes(x, y).cc_nodes;
    }
    report.fast_only = difference(fast, report.truth);
    report.matrix_only = difference(report.truth, fast);
    report.heuristic_extra = difference(heuristic_result, report.truth);
    report.heuristic_missing = difference(report.truth, heuristic_result);
    return report;
}

}  // namespace mln
