#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "mln/graph.hpp"

namespace mln {

/// Reads a whitespace-separated "u v" edge list ('#' lines and blank lines
/// ignored). Without n, the vertex count is 1 + the largest id seen.
LayerGraph load_edge_list(const std::filesystem::path& path, std::optional<std::size_t> n = std::nullopt,
                          NormalizeStats* stats = nullptr);

/// Parses edge-list text; `source` only labels error messages.
LayerGraph parse_edge_list(std::string_view text, std::optional<std::size_t> n = std::nullopt,
                           NormalizeStats* stats = nullptr, const std::string& source = "<memory>");

/// Writes each undirected edge once as "u v" with u < v, ascending.
void save_edge_list(const LayerGraph& g, const std::filesystem::path& path);

std::string format_edge_list(const LayerGraph& g);

/// Sidecar metadata lives next to an edge list as "<file>.meta.json".
std::filesystem::path sidecar_path(const std::filesystem::path& edge_file);
void write_sidecar(const std::filesystem::path& edge_file, const LayerGraph& g,
                   const nlohmann::json& generator = nlohmann::json::object());
std::optional<nlohmann::json> read_sidecar(const std::filesystem::path& edge_file);

/// Maps arbitrary external vertex ids onto the dense range [0, n).
class IdTranslation {
public:
    VertexId intern(std::uint64_t external);
    std::optional<VertexId> find(std::uint64_t external) const;
    std::uint64_t external(VertexId dense) const { return to_external_.at(dense); }
    std::size_t size() const noexcept { return to_external_.size(); }

    /// One "dense external" pair per line.
    void save(const std::filesystem::path& path) const;
    static IdTranslation load(const std::filesystem::path& path);

private:
    std::unordered_map<std::uint64_t, VertexId> to_dense_;
    std::vector<std::uint64_t> to_external_;
};

struct RemappedLayers {
    std::vector<LayerGraph> graphs;
    IdTranslation ids;
};

/// Loads several edge lists with arbitrary integer ids through one shared
/// translation table, so every layer ends up over the same dense universe.
RemappedLayers load_remapped(const std::vector<std::filesystem::path>& paths);

}  // namespace mln
