#include "mln/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace mln {
namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

/// Splits text into lines and hands each non-comment line's two integer
/// fields to `emit(line_no, a, b)`.
template <typename Emit>
void for_each_pair(std::string_view text, const std::string& source, Emit&& emit) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        std::size_t i = 0;
        while (i < line.size() && is_blank(line[i])) ++i;
        if (i == line.size() || line[i] == '#') continue;

        std::uint64_t fields[2];
        for (auto& field : fields) {
            while (i < line.size() && is_blank(line[i])) ++i;
            auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), field);
            if (ec != std::errc() || ptr == line.data() + i) {
                throw ParseError(source, line_no, "expected two non-negative integers");
            }
            i = static_cast<std::size_t>(ptr - line.data());
            if (i < line.size() && !is_blank(line[i])) {
                throw ParseError(source, line_no, "malformed vertex id");
            }
        }
        while (i < line.size() && is_blank(line[i])) ++i;
        if (i != line.size()) throw ParseError(source, line_no, "trailing data after edge");
        emit(line_no, fields[0], fields[1]);
    }
}

}  // namespace

LayerGraph parse_edge_list(std::string_view text, std::optional<std::size_t> n, NormalizeStats* stats,
                           const std::string& source) {
    std::vector<Edge> edges;
    std::uint64_t max_id = 0;
    bool any = false;
    for_each_pair(text, source, [&](std::size_t line_no, std::uint64_t a, std::uint64_t b) {
        if (n && (a >= *n || b >= *n)) {
            throw ParseError(source, line_no, "vertex id >= n=" + std::to_string(*n));
        }
        if (a > UINT32_MAX - 1 || b > UINT32_MAX - 1) {
            throw ParseError(source, line_no, "vertex id too large; use id remapping");
        }
        max_id = std::max({max_id, a, b});
        any = true;
        edges.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
    });
    const std::size_t count = n ? *n : (any ? static_cast<std::size_t>(max_id) + 1 : 0);
    return LayerGraph::from_edges(count, edges, stats);
}

LayerGraph load_edge_list(const std::filesystem::path& path, std::optional<std::size_t> n, NormalizeStats* stats) {
    return parse_edge_list(read_file(path), n, stats, path.string());
}

std::string format_edge_list(const LayerGraph& g) {
    std::string out;
    out.reserve(g.num_edges() * 14);
    char buf[32];
    for (VertexId u = 0; u < g.num_vertices(); ++u) {
        for (VertexId v : g.neighbors(u)) {
            if (v <= u) continue;
            auto p = std::to_chars(buf, buf + sizeof buf, u).ptr;
            *p++ = ' ';
            p = std::to_chars(p, buf + sizeof buf, v).ptr;
            *p++ = '\n';
            out.append(buf, p);
        }
    }
    return out;
}

void save_edge_list(const LayerGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    const auto text = format_edge_list(g);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError("write failed for " + path.string());
}

std::filesystem::path sidecar_path(const std::filesystem::path& edge_file) {
    auto p = edge_file;
    p += ".meta.json";
    return p;
}

void write_sidecar(const std::filesystem::path& edge_file, const LayerGraph& g, const nlohmann::json& generator) {
    nlohmann::json meta = {
        {"n", g.num_vertices()},
        {"edge_count", g.num_edges()},
        {"generator", generator},
    };
    std::ofstream out(sidecar_path(edge_file), std::ios::trunc);
    if (!out) throw DataError("cannot write " + sidecar_path(edge_file).string());
    out << meta.dump(2) << '\n';
}

std::optional<nlohmann::json> read_sidecar(const std::filesystem::path& edge_file) {
    const auto p = sidecar_path(edge_file);
    if (!std::filesystem::exists(p)) return std::nullopt;
    try {
        return nlohmann::json::parse(read_file(p));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(p.string() + ": " + e.what());
    }
}

VertexId IdTranslation::intern(std::uint64_t external) {
    auto [it, inserted] = to_dense_.try_emplace(external, static_cast<VertexId>(to_external_.size()));
    if (inserted) to_external_.push_back(external);
    return it->second;
}

std::optional<VertexId> IdTranslation::find(std::uint64_t external) const {
    auto it = to_dense_.find(external);
    if (it == to_dense_.end()) return std::nullopt;
    return it->second;
}

void IdTranslation::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    for (std::size_t i = 0; i < to_external_.size(); ++i) out << i << ' ' << to_external_[i] << '\n';
}

IdTranslation IdTranslation::load(const std::filesystem::path& path) {
    IdTranslation ids;
    const auto text = read_file(path);
    for_each_pair(text, path.string(), [&](std::size_t line_no, std::uint64_t dense, std::uint64_t external) {
        if (dense != ids.size() || ids.find(external)) {
            throw ParseError(path.string(), line_no, "id table must list dense ids 0..n-1 once each");
        }
        ids.intern(external);
    });
    return ids;
}

RemappedLayers load_remapped(const std::vector<std::filesystem::path>& paths) {
    RemappedLayers out;
    std::vector<std::vector<Edge>> edge_lists(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const auto text = read_file(paths[i]);
        for_each_pair(text, paths[i].string(), [&](std::size_t, std::uint64_t a, std::uint64_t b) {
            edge_lists[i].emplace_back(out.ids.intern(a), out.ids.intern(b));
        });
    }
    for (const auto& edges : edge_lists) {
        out.graphs.push_back(LayerGraph::from_edges(out.ids.size(), edges));
    }
    return out;
}

}  // namespace mln
