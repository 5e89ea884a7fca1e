#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mln/graph.hpp"
#include "mln/random.hpp"

namespace mln::testing {

inline LayerGraph graph(std::size_t n, std::vector<Edge> edges) { return LayerGraph::from_edges(n, edges); }

inline MultilayerNetwork pair_mln(LayerGraph x, LayerGraph y) {
    return MultilayerNetwork({{"L1", std::move(x)}, {"L2", std::move(y)}});
}

// M1: x = star at 0, y = path 0-1-2, vertex 3 isolated in y.
inline LayerGraph m1_x() { return graph(4, {{0, 1}, {0, 2}, {0, 3}}); }
inline LayerGraph m1_y() { return graph(4, {{0, 1}, {1, 2}}); }

// M2: x = path 0-1-2-3, y = star at 1.
inline LayerGraph m2_x() { return graph(4, {{0, 1}, {1, 2}, {2, 3}}); }
inline LayerGraph m2_y() { return graph(4, {{0, 1}, {1, 2}, {1, 3}}); }

/// Erdos-Renyi style layer: each pair kept with probability p.
inline LayerGraph random_layer(Rng& rng, std::size_t n, double p) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v = u + 1; v < n; ++v) {
            if (rng.uniform() < p) edges.emplace_back(u, v);
        }
    }
    return LayerGraph::from_edges(n, edges);
}

/// Sparse layer with roughly m edges drawn uniformly (fast for larger n).
inline LayerGraph sparse_layer(Rng& rng, std::size_t n, std::size_t m) {
    std::vector<Edge> edges;
    if (n < 2) return LayerGraph::from_edges(n, edges);
    for (std::size_t i = 0; i < m; ++i) {
        edges.emplace_back(static_cast<VertexId>(rng.below(n)), static_cast<VertexId>(rng.below(n)));
    }
    return LayerGraph::from_edges(n, edges);
}

/// Connected layer: a random spanning tree plus `extra` random edges.
inline LayerGraph connected_layer(Rng& rng, std::size_t n, std::size_t extra) {
    std::vector<Edge> edges;
    std::vector<VertexId> order(n);
    for (VertexId u = 0; u < n; ++u) order[u] = u;
    rng.shuffle(order.begin(), order.end());
    for (std::size_t i = 1; i < n; ++i) edges.emplace_back(order[i], order[rng.below(i)]);
    for (std::size_t i = 0; i < extra && n > 1; ++i) {
        edges.emplace_back(static_cast<VertexId>(rng.below(n)), static_cast<VertexId>(rng.below(n)));
    }
    return LayerGraph::from_edges(n, edges);
}

/// Random two-layer network with mixed densities, including empty and
/// near-complete layers now and then.
inline MultilayerNetwork random_mln(Rng& rng, std::size_t max_n) {
    const std::size_t n = 1 + rng.below(max_n);
    auto density = [&] {
        switch (rng.below(6)) {
            case 0: return 0.0;
            case 1: return 0.9;
            default: return rng.uniform() * std::min(1.0, 8.0 / static_cast<double>(n));
        }
    };
    auto x = random_layer(rng, n, density());
    auto y = random_layer(rng, n, density());
    return pair_mln(std::move(x), std::move(y));
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("mln_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace mln::testing
