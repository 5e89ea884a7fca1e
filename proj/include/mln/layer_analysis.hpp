#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mln/graph.hpp"

namespace mln {

enum class RetentionKind { None, HubsOnly, Fraction, All };

/// How much one-hop neighborhood data a degree analysis keeps for composition.
struct RetentionPolicy {
    RetentionKind kind = RetentionKind::None;
    double fraction = 0.0;   // only meaningful for Fraction
    std::uint64_t seed = 0;  // picks the retained subset for Fraction

    static RetentionPolicy none() { return {}; }
    static RetentionPolicy hubs_only() { return {RetentionKind::HubsOnly, 0.0, 0}; }
    static RetentionPolicy all() { return {RetentionKind::All, 1.0, 0}; }
    static RetentionPolicy sample(double fraction, std::uint64_t seed);

    /// "none", "hubs", "all" or "fraction:<f>" (seed supplied separately).
    static RetentionPolicy parse(const std::string& text, std::uint64_t seed = 0);
    std::string to_string() const;

    friend bool operator==(const RetentionPolicy&, const RetentionPolicy&) = default;
};

/// Neighbor lists for a sorted subset of vertices, packed CSR-style.
class NeighborhoodMap {
public:
    NeighborhoodMap() = default;

    /// Copies the adjacency of each key (keys must be sorted and unique).
    static NeighborhoodMap capture(const LayerGraph& g, std::span<const VertexId> keys);
    static NeighborhoodMap from_parts(std::vector<VertexId> keys, std::vector<std::uint64_t> offsets,
                                      std::vector<VertexId> neighbors);

    bool contains(VertexId u) const;
    /// Empty optional when u has no retained neighborhood.
    std::optional<std::span<const VertexId>> find(VertexId u) const;

    std::size_t size() const noexcept { return keys_.size(); }
    std::span<const VertexId> keys() const noexcept { return keys_; }
    std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
    std::span<const VertexId> neighbors() const noexcept { return neighbors_; }

    friend bool operator==(const NeighborhoodMap&, const NeighborhoodMap&) = default;

private:
    std::vector<VertexId> keys_;
    std::vector<std::uint64_t> offsets_{0};
    std::vector<VertexId> neighbors_;
};

/// Per-layer output of the degree analysis.
struct DegreeSummary {
    std::string layer_name;
    std::size_t n = 0;
    std::vector<std::uint32_t> deg;  // may be empty if the artifact was written without it
    std::uint64_t degree_sum = 0;
    VertexSet hubs;                  // deg(u) >= average degree
    std::optional<NeighborhoodMap> hub_neighborhoods;
    std::optional<NeighborhoodMap> full_neighborhoods;
    RetentionPolicy retention;
    double psi_time_ms = 0.0;

    double avg_deg() const { return n == 0 ? 0.0 : static_cast<double>(degree_sum) / static_cast<double>(n); }

    /// Compares content; the Psi wall time is ignored.
    friend bool operator==(const DegreeSummary& a, const DegreeSummary& b) {
        return a.layer_name == b.layer_name && a.n == b.n && a.deg == b.deg && a.degree_sum == b.degree_sum &&
               a.hubs == b.hubs && a.hub_neighborhoods == b.hub_neighborhoods &&
               a.full_neighborhoods == b.full_neighborhoods && a.retention == b.retention;
    }
};

/// Per-layer output of the closeness analysis.
struct ClosenessSummary {
    std::string layer_name;
    std::size_t n = 0;
    std::vector<std::uint32_t> deg;
    /// Sum of BFS distances with every unreachable vertex counted at distance n.
    std::vector<std::uint64_t> sum_dist;
    /// Wasserman-Faust normalized closeness: ((r-1)/(n-1)) * ((r-1)/sum over the component).
    std::vector<double> cc_value;
    std::vector<std::uint32_t> component_size;
    VertexSet cc_nodes;  // cc_value >= mean cc_value
    std::optional<NeighborhoodMap> cc_neighborhoods;
    double psi_time_ms = 0.0;

    /// Compares content; the Psi wall time is ignored.
    friend bool operator==(const ClosenessSummary& a, const ClosenessSummary& b) {
        return a.layer_name == b.layer_name && a.n == b.n && a.deg == b.deg && a.sum_dist == b.sum_dist &&
               a.cc_value == b.cc_value && a.component_size == b.component_size && a.cc_nodes == b.cc_nodes &&
               a.cc_neighborhoods == b.cc_neighborhoods;
    }
};

/// Subset of [0, n) retained by a fractional policy: the first ceil(f*n)
/// entries of a seeded permutation, sorted. Subsets for growing f under one
/// seed are nested.
VertexSet retained_subset(std::size_t n, double fraction, std::uint64_t seed);

DegreeSummary analyze_degree(const LayerGraph& g, const RetentionPolicy& retain = {}, std::string layer_name = {});

/// All-sources BFS; `threads` > 1 fans BFS sources out over OpenMP workers.
ClosenessSummary analyze_closeness(const LayerGraph& g, unsigned threads = 1, std::string layer_name = {});

enum class AnalysisKind { Degree, Closeness };

using LayerSummary = std::variant<DegreeSummary, ClosenessSummary>;

struct LayerAnalysis {
    std::vector<LayerSummary> summaries;  // same order as the network's layers
    std::vector<double> psi_time_ms;

    double max_psi_time_ms() const;
    std::vector<DegreeSummary> degree() const;
    std::vector<ClosenessSummary> closeness() const;
};

/// Runs the per-layer analysis over every layer, concurrently when threads > 1.
/// Results do not depend on the thread count.
LayerAnalysis analyze_layers(const MultilayerNetwork& mln, AnalysisKind kind, const RetentionPolicy& retain = {},
                             unsigned threads = 1);

}  // namespace mln
