#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mln/types.hpp"

namespace mln {

using Edge = std::pair<VertexId, VertexId>;

/// Counts of input edges dropped while normalizing to a simple graph.
struct NormalizeStats {
    std::size_t input_edges = 0;
    std::size_t self_loops = 0;
    std::size_t duplicates = 0;
};

/**
 * Immutable undirected simple graph over vertices [0, n), stored as CSR.
 *
 * Neighbor lists are sorted ascending, contain no self-loops or repeats, and
 * the adjacency is symmetric. One LayerGraph is one layer of a homogeneous
 * multilayer network.
 */
class LayerGraph {
public:
    LayerGraph() : offsets_(1, 0) {}

    /// Builds a simple graph from an arbitrary edge list. Self-loops are
    /// dropped, duplicates (in either orientation) collapsed. Throws
    /// DataError if an endpoint is >= n.
    static LayerGraph from_edges(std::size_t n, std::span<const Edge> edges,
                                 NormalizeStats* stats = nullptr);

    /// Takes ownership of an already-canonical CSR (sorted, symmetric,
    /// simple). Only checked in debug builds.
    static LayerGraph from_csr(std::vector<std::uint64_t> offsets, std::vector<VertexId> neighbors);

    std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
    std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }

    std::uint32_t degree(VertexId u) const noexcept {
        return static_cast<std::uint32_t>(offsets_[u + 1] - offsets_[u]);
    }

    std::span<const VertexId> neighbors(VertexId u) const noexcept {
        return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
    }

    bool has_edge(VertexId u, VertexId v) const noexcept;

    /// Canonical edge list: u < v, lexicographically ascending.
    std::vector<Edge> edges() const;

    std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
    std::span<const VertexId> adjacency() const noexcept { return neighbors_; }

    friend bool operator==(const LayerGraph&, const LayerGraph&) = default;

private:
    LayerGraph(std::vector<std::uint64_t> offsets, std::vector<VertexId> neighbors)
        : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)) {}

    std::vector<std::uint64_t> offsets_;
    std::vector<VertexId> neighbors_;
};

/// Checks the simple/symmetric/sorted invariants; used by tests and debug asserts.
bool is_valid_simple_graph(const LayerGraph& g);

struct NamedLayer {
    std::string name;
    LayerGraph graph;
};

/// Ordered set of named layers over one shared vertex universe.
class MultilayerNetwork {
public:
    /// Throws DataError on an empty layer list, differing vertex counts, or
    /// duplicate layer names.
    explicit MultilayerNetwork(std::vector<NamedLayer> layers);

    std::size_t num_vertices() const noexcept { return n_; }
    std::size_t num_layers() const noexcept { return layers_.size(); }

    const NamedLayer& layer(std::size_t i) const { return layers_.at(i); }
    const std::vector<NamedLayer>& layers() const noexcept { return layers_; }

private:
    std::size_t n_ = 0;
    std::vector<NamedLayer> layers_;
};

inline MultilayerNetwork build_mln(std::vector<NamedLayer> layers) {
    return MultilayerNetwork(std::move(layers));
}

}  // namespace mln
