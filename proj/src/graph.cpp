#include "mln/graph.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace mln {

LayerGraph LayerGraph::from_edges(std::size_t n, std::span<const Edge> edges, NormalizeStats* stats) {
    std::vector<std::uint64_t> counts(n + 1, 0);
    std::size_t loops = 0;
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw DataError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") out of range for n=" + std::to_string(n));
        }
        if (u == v) {
            ++loops;
            continue;
        }
        ++counts[u + 1];
        ++counts[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) counts[i + 1] += counts[i];

    std::vector<VertexId> raw(counts[n]);
    std::vector<std::uint64_t> cursor(counts.begin(), counts.end() - 1);
    for (const auto& [u, v] : edges) {
        if (u == v) continue;
        raw[cursor[u]++] = v;
        raw[cursor[v]++] = u;
    }

    // Sort and dedupe each list, compacting in place.
    std::vector<std::uint64_t> offsets(n + 1, 0);
    std::uint64_t write = 0;
    for (std::size_t u = 0; u < n; ++u) {
        auto first = raw.begin() + static_cast<std::ptrdiff_t>(counts[u]);
        auto last = raw.begin() + static_cast<std::ptrdiff_t>(counts[u + 1]);
        std::sort(first, last);
        last = std::unique(first, last);
        auto out = raw.begin() + static_cast<std::ptrdiff_t>(write);
        if (out != first) std::copy(first, last, out);
        write += static_cast<std::uint64_t>(last - first);
        offsets[u + 1] = write;
    }
    raw.resize(write);
    raw.shrink_to_fit();

    if (stats) {
        stats->input_edges = edges.size();
        stats->self_loops = loops;
        stats->duplicates = edges.size() - loops - write / 2;
    }
    return LayerGraph(std::move(offsets), std::move(raw));
}

LayerGraph LayerGraph::from_csr(std::vector<std::uint64_t> offsets, std::vector<VertexId> neighbors) {
    LayerGraph g(std::move(offsets), std::move(neighbors));
    assert(is_valid_simple_graph(g));
    return g;
}

bool LayerGraph::has_edge(VertexId u, VertexId v) const noexcept {
    if (u >= num_vertices() || v >= num_vertices()) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> LayerGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (VertexId u = 0; u < num_vertices(); ++u) {
        auto nb = neighbors(u);
        for (auto it = std::upper_bound(nb.begin(), nb.end(), u); it != nb.end(); ++it) {
            out.emplace_back(u, *it);
        }
    }
    return out;
}

bool is_valid_simple_graph(const LayerGraph& g) {
    const auto n = g.num_vertices();
    auto offsets = g.offsets();
    if (offsets.front() != 0 || offsets.back() != g.adjacency().size()) return false;
    if (g.adjacency().size() % 2 != 0) return false;
    for (VertexId u = 0; u < n; ++u) {
        if (offsets[u] > offsets[u + 1]) return false;
        auto nb = g.neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] >= n || nb[i] == u) return false;
            if (i > 0 && nb[i - 1] >= nb[i]) return false;
            if (!g.has_edge(nb[i], u)) return false;
        }
    }
    return true;
}

MultilayerNetwork::MultilayerNetwork(std::vector<NamedLayer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw DataError("a multilayer network needs at least one layer");
    n_ = layers_.front().graph.num_vertices();
    std::unordered_set<std::string> names;
    for (const auto& layer : layers_) {
        if (layer.graph.num_vertices() != n_) {
            throw DataError("layer '" + layer.name + "' has " + std::to_string(layer.graph.num_vertices()) +
                            " vertices, expected " + std::to_string(n_));
        }
        if (!names.insert(layer.name).second) {
            throw DataError("duplicate layer name '" + layer.name + "'");
        }
    }
}

}  // namespace mln
