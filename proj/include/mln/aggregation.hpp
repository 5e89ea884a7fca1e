#pragma once

#include <cstddef>
#include <string>

#include "mln/graph.hpp"
#include "mln/layer_analysis.hpp"

namespace mln {

enum class BoolOp { Or, And };

/// Edge-set union (OR) or intersection (AND) of two layers over the same
/// vertex set, computed by merging sorted adjacency lists.
LayerGraph aggregate(const LayerGraph& x, const LayerGraph& y, BoolOp op, unsigned threads = 1);

/// Exact hub set of the OR-aggregated graph, with the cost breakdown the
/// benchmark compares against.
struct DegreeGroundTruth {
    VertexSet hubs;
    std::uint64_t degree_sum = 0;
    std::size_t n = 0;
    std::size_t aggregated_edges = 0;
    double aggregate_ms = 0.0;
    double centrality_ms = 0.0;

    double avg_deg() const { return n == 0 ? 0.0 : static_cast<double>(degree_sum) / static_cast<double>(n); }
    double total_ms() const { return aggregate_ms + centrality_ms; }
};

DegreeGroundTruth ground_truth_degree_hubs(const LayerGraph& x, const LayerGraph& y, unsigned threads = 1);

/// CC nodes of the AND-aggregated graph (Wasserman-Faust values, >= mean rule).
struct ClosenessGroundTruth {
    VertexSet cc_nodes;
    ClosenessSummary aggregated;  // full closeness analysis of the AND graph
    std::size_t aggregated_edges = 0;
    double aggregate_ms = 0.0;
    double centrality_ms = 0.0;

    double total_ms() const { return aggregate_ms + centrality_ms; }
};

ClosenessGroundTruth ground_truth_cc_nodes(const LayerGraph& x, const LayerGraph& y, unsigned threads = 1);

enum class CentralityKind { Degree, Closeness };

/// Set differences found by the adjacency-matrix oracle.
struct DiscrepancyReport {
    CentralityKind kind = CentralityKind::Degree;
    VertexSet truth;              // matrix-oracle ground truth
    VertexSet fast_only;          // in the fast oracle's set but not the matrix oracle's
    VertexSet matrix_only;        // in the matrix oracle's set but not the fast oracle's
    VertexSet heuristic_extra;    // false positives of the heuristic result
    VertexSet heuristic_missing;  // false negatives of the heuristic result

    bool oracles_agree() const { return fast_only.empty() && matrix_only.empty(); }
    bool empty() const { return oracles_agree() && heuristic_extra.empty() && heuristic_missing.empty(); }
};

inline constexpr std::size_t kBruteForceVertexBound = 5000;

/// Recomputes the ground truth of a two-layer network with a dense
/// adjacency-matrix implementation (Floyd-Warshall distances) and reports
/// how the heuristic result and the fast oracle differ from it.
/// Throws UsageError if n exceeds `bound` or the network does not have two layers.
DiscrepancyReport brute_force_check(const MultilayerNetwork& mln, const VertexSet& heuristic_result,
                                    CentralityKind kind, std::size_t bound = kBruteForceVertexBound);

}  // namespace mln
