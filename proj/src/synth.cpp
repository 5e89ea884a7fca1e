#include "mln/synth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "mln/edge_list.hpp"
#include "mln/random.hpp"

namespace mln {
namespace {

using nlohmann::json;

std::uint64_t edge_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

void check_probability(double p, const char* what, bool allow_zero) {
    if (!(p <= 1.0 && (allow_zero ? p >= 0.0 : p > 0.0))) {
        throw UsageError(std::string(what) + " must lie in " + (allow_zero ? "[0, 1]" : "(0, 1]"));
    }
}

void validate_kind(const LayerKind& kind) {
    if (const auto* r = std::get_if<RmatParams>(&kind)) {
        if (!(r->a > 0 && r->b > 0 && r->c > 0 && r->d > 0)) throw UsageError("rmat probabilities must be positive");
        if (std::fabs(r->a + r->b + r->c + r->d - 1.0) > 1e-9) throw UsageError("rmat probabilities must sum to 1");
    } else {
        const auto& p = std::get<NormalParams>(kind);
        if (p.sd_deg < 0) throw UsageError("normal sd_deg must be >= 0");
        if (p.mean_deg && *p.mean_deg < 0) throw UsageError("normal mean_deg must be >= 0");
    }
}

}  // namespace

void validate(const GenSpec& spec) {
    if (spec.id.empty() || spec.id.find_first_of("/\\") != std::string::npos || spec.id == "." || spec.id == "..") {
        throw UsageError("dataset id '" + spec.id + "' is not a valid directory name");
    }
    validate_kind(spec.kind);
    if (spec.kind_l2) validate_kind(*spec.kind_l2);
    if (!spec.split) return;
    const auto& s = *spec.split;
    switch (s.mode) {
        case SplitSpec::Mode::Partition:
            check_probability(s.p1, "partition p1", true);
            check_probability(s.p2, "partition p2", true);
            if (std::fabs(s.p1 + s.p2 - 1.0) > 1e-9) throw UsageError("partition probabilities must sum to 1");
            break;
        case SplitSpec::Mode::IndependentSample:
            check_probability(s.p1, "sample p1", false);
            check_probability(s.p2, "sample p2", false);
            break;
        case SplitSpec::Mode::SeparateGeneration: break;
    }
}

LayerGraph generate_rmat(std::size_t n, std::size_t m, const RmatParams& params, std::uint64_t seed) {
    validate_kind(params);
    const double max_edges = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    if (m > 0 && static_cast<double>(m) >= max_edges) {
        throw UsageError("rmat: m=" + std::to_string(m) + " must be below n(n-1)/2 for n=" + std::to_string(n));
    }
    if (n > UINT32_MAX) throw UsageError("rmat: n too large");

    int levels = 0;
    while ((std::uint64_t{1} << levels) < n) ++levels;

    Rng rng(seed);
    const double ab = params.a + params.b;
    const double abc = ab + params.c;
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m * 2);
    std::vector<Edge> edges;
    edges.reserve(m);

    const std::uint64_t max_attempts = 200 * static_cast<std::uint64_t>(m) + 100000;
    std::uint64_t attempts = 0;
    while (edges.size() < m) {
        if (++attempts > max_attempts) {
            throw DataError("rmat: could only place " + std::to_string(edges.size()) + " of " + std::to_string(m) +
                            " distinct edges; request is too dense");
        }
        std::uint64_t u = 0, v = 0;
        for (int l = 0; l < levels; ++l) {
            const double r = rng.uniform();
            const unsigned row = r >= ab;
            const unsigned col = (r >= params.a && r < ab) || r >= abc;
            u = (u << 1) | row;
            v = (v << 1) | col;
        }
        if (u >= n || v >= n || u == v) continue;
        const auto a = static_cast<VertexId>(u);
        const auto b = static_cast<VertexId>(v);
        if (!seen.insert(edge_key(a, b)).second) continue;
        edges.emplace_back(a, b);
    }
    return LayerGraph::from_edges(n, edges);
}

LayerGraph generate_normal(std::size_t n, const NormalParams& params, std::uint64_t seed, std::size_t edge_budget) {
    validate_kind(params);
    if (n == 0) return LayerGraph::from_edges(0, {});
    const double mean =
        params.mean_deg ? *params.mean_deg : 2.0 * static_cast<double>(edge_budget) / static_cast<double>(n);

    Rng rng(seed);
    const auto cap = static_cast<std::int64_t>(n - 1);
    std::vector<std::uint32_t> deg(n);
    std::uint64_t total = 0;
    for (auto& d : deg) {
        const auto draw = static_cast<std::int64_t>(std::llround(mean + params.sd_deg * rng.normal()));
        d = static_cast<std::uint32_t>(std::clamp<std::int64_t>(draw, 0, cap));
        total += d;
    }
    if (total % 2 == 1) {
        // Nudge one random vertex to make the stub count even.
        for (;;) {
            auto& d = deg[rng.below(n)];
            if (d < cap) {
                ++d;
                break;
            }
            if (d > 0) {
                --d;
                break;
            }
        }
    }

    std::vector<VertexId> stubs;
    stubs.reserve(total + 1);
    for (VertexId u = 0; u < n; ++u) stubs.insert(stubs.end(), deg[u], u);
    rng.shuffle(stubs.begin(), stubs.end());

    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(stubs.size());
    std::vector<Edge> pending;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const VertexId u = stubs[i], v = stubs[i + 1];
        if (u != v && index.try_emplace(edge_key(u, v), edges.size()).second) {
            edges.emplace_back(u, v);
        } else {
            pending.emplace_back(u, v);
        }
    }

    // Degree-preserving repair: rewire an existing edge (a, b) and the bad
    // pair (u, v) into (u, a) and (v, b).
    auto remove_edge = [&](std::size_t i) {
        index.erase(edge_key(edges[i].first, edges[i].second));
        if (i + 1 != edges.size()) {
            edges[i] = edges.back();
            index[edge_key(edges[i].first, edges[i].second)] = i;
        }
        edges.pop_back();
    };
    auto add_edge = [&](VertexId a, VertexId b) {
        index.emplace(edge_key(a, b), edges.size());
        edges.emplace_back(a, b);
    };
    constexpr int kRepairAttempts = 10000;
    for (const auto& [u, v] : pending) {
        bool fixed = false;
        for (int attempt = 0; attempt < kRepairAttempts && !edges.empty(); ++attempt) {
            const std::size_t i = rng.below(edges.size());
            auto [a, b] = edges[i];
            if (rng.below(2)) std::swap(a, b);
            if (u == a || v == b) continue;
            const auto k1 = edge_key(u, a), k2 = edge_key(v, b);
            if (k1 == k2 || index.contains(k1) || index.contains(k2)) continue;
            remove_edge(i);
            add_edge(u, a);
            add_edge(v, b);
            fixed = true;
            break;
        }
        if (!fixed) throw DataError("normal degree sequence could not be realized as a simple graph");
    }
    return LayerGraph::from_edges(n, edges);
}

LayerGraph generate_layer(std::size_t n, std::size_t m, const LayerKind& kind, std::uint64_t seed) {
    if (const auto* r = std::get_if<RmatParams>(&kind)) return generate_rmat(n, m, *r, seed);
    return generate_normal(n, std::get<NormalParams>(kind), seed, m);
}

std::pair<LayerGraph, LayerGraph> split_layers(const LayerGraph& base, const SplitSpec& split, std::uint64_t seed) {
    if (split.mode == SplitSpec::Mode::SeparateGeneration) {
        throw UsageError("separate generation does not split a base graph");
    }
    Rng rng(seed);
    std::vector<Edge> first, second;
    for (const auto& e : base.edges()) {
        if (split.mode == SplitSpec::Mode::Partition) {
            (rng.uniform() < split.p1 ? first : second).push_back(e);
        } else {
            if (rng.uniform() < split.p1) first.push_back(e);
            if (rng.uniform() < split.p2) second.push_back(e);
        }
    }
    return {LayerGraph::from_edges(base.num_vertices(), first), LayerGraph::from_edges(base.num_vertices(), second)};
}

double degree_skewness(const LayerGraph& g) {
    const std::size_t n = g.num_vertices();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (VertexId u = 0; u < n; ++u) mean += g.degree(u);
    mean /= static_cast<double>(n);
    double m2 = 0.0, m3 = 0.0;
    for (VertexId u = 0; u < n; ++u) {
        const double d = g.degree(u) - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    return m2 == 0.0 ? 0.0 : m3 / std::pow(m2, 1.5);
}

namespace {

json kind_to_json(const LayerKind& kind) {
    if (const auto* r = std::get_if<RmatParams>(&kind)) {
        return {{"type", "rmat"}, {"a", r->a}, {"b", r->b}, {"c", r->c}, {"d", r->d}};
    }
    const auto& p = std::get<NormalParams>(kind);
    json j = {{"type", "normal"}, {"sd_deg", p.sd_deg}};
    if (p.mean_deg) j["mean_deg"] = *p.mean_deg;
    return j;
}

LayerKind kind_from_json(const json& j) {
    const auto type = j.at("type").get<std::string>();
    if (type == "rmat") {
        RmatParams r;
        r.a = j.value("a", r.a);
        r.b = j.value("b", r.b);
        r.c = j.value("c", r.c);
        r.d = j.value("d", r.d);
        return r;
    }
    if (type == "normal") {
        NormalParams p;
        p.sd_deg = j.value("sd_deg", 0.0);
        if (j.contains("mean_deg")) p.mean_deg = j.at("mean_deg").get<double>();
        return p;
    }
    throw UsageError("unknown layer kind '" + type + "'");
}

json split_to_json(const SplitSpec& s) {
    switch (s.mode) {
        case SplitSpec::Mode::Partition: return {{"mode", "partition"}, {"p1", s.p1}, {"p2", s.p2}};
        case SplitSpec::Mode::IndependentSample: return {{"mode", "independent_sample"}, {"p1", s.p1}, {"p2", s.p2}};
        case SplitSpec::Mode::SeparateGeneration:
            return {{"mode", "separate_generation"}, {"m1", s.m1}, {"m2", s.m2}};
    }
    return nullptr;
}

SplitSpec split_from_json(const json& j) {
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "partition") return SplitSpec::partition(j.at("p1").get<double>(), j.at("p2").get<double>());
    if (mode == "independent_sample") {
        return SplitSpec::independent_sample(j.at("p1").get<double>(), j.at("p2").get<double>());
    }
    if (mode == "separate_generation") {
        return SplitSpec::separate_generation(j.at("m1").get<std::size_t>(), j.at("m2").get<std::size_t>());
    }
    throw UsageError("unknown split mode '" + mode + "'");
}

json spec_to_json(const GenSpec& s) {
    json j = {{"id", s.id}, {"n", s.n}, {"m", s.m}, {"kind", kind_to_json(s.kind)}};
    if (s.kind_l2) j["kind_l2"] = kind_to_json(*s.kind_l2);
    if (s.seed) j["seed"] = *s.seed;
    if (s.split) j["split"] = split_to_json(*s.split);
    return j;
}

GenSpec spec_from_json(const json& j) {
    GenSpec s;
    s.id = j.at("id").get<std::string>();
    s.n = j.at("n").get<std::size_t>();
    s.m = j.value("m", std::size_t{0});
    s.kind = j.contains("kind") ? kind_from_json(j.at("kind")) : LayerKind{RmatParams{}};
    if (j.contains("kind_l2")) s.kind_l2 = kind_from_json(j.at("kind_l2"));
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("split")) s.split = split_from_json(j.at("split"));
    return s;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
    if (!out) throw DataError("write failed for " + path.string());
}

std::string human_count(std::size_t v) {
    auto fmt = [](double x, const char* unit) {
        std::ostringstream ss;
        ss << x << unit;
        return ss.str();
    };
    if (v >= 1000000 && v % 100000 == 0) return fmt(static_cast<double>(v) / 1e6, "M");
    if (v >= 1000 && v % 1000 == 0) return fmt(static_cast<double>(v) / 1e3, "K");
    return std::to_string(v);
}

}  // namespace

Manifest manifest_from_json(const json& j) {
    try {
        Manifest m;
        const json* list = &j;
        if (j.is_object()) {
            m.seed = j.value("seed", std::uint64_t{0});
            list = &j.at("datasets");
        }
        if (!list->is_array()) throw DataError("manifest must hold a list of datasets");
        for (const auto& entry : *list) m.datasets.push_back(spec_from_json(entry));
        return m;
    } catch (const json::exception& e) {
        throw DataError(std::string("manifest: ") + e.what());
    }
}

json manifest_to_json(const Manifest& m) {
    json list = json::array();
    for (const auto& s : m.datasets) list.push_back(spec_to_json(s));
    return {{"seed", m.seed}, {"datasets", list}};
}

Manifest load_manifest(const std::filesystem::path& path) {
    try {
        return manifest_from_json(json::parse(read_text(path)));
    } catch (const json::parse_error& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_dataset(const GenSpec& spec, std::uint64_t manifest_seed, const std::filesystem::path& dir) {
    validate(spec);
    const std::uint64_t seed = spec.seed.value_or(derive_seed(manifest_seed, spec.id));
    const std::uint64_t seed_l1 = derive_seed(seed, "L1");
    const std::uint64_t seed_l2 = derive_seed(seed, "L2");

    json layers = json::array();
    LayerGraph l1, l2;
    json meta = {{"id", spec.id}, {"n", spec.n}, {"seed", seed}, {"generator_version", kGeneratorVersion},
                 {"spec", spec_to_json(spec)}};

    const SplitSpec split = spec.split.value_or(SplitSpec::separate_generation(spec.m, 0));
    if (split.mode == SplitSpec::Mode::SeparateGeneration) {
        l1 = generate_layer(spec.n, split.m1, spec.kind, seed_l1);
        l2 = generate_layer(spec.n, split.m2, spec.kind_l2.value_or(spec.kind), seed_l2);
        layers.push_back({{"name", "L1"}, {"file", "L1.edges"}, {"m", l1.num_edges()}, {"kind", kind_to_json(spec.kind)}, {"seed", seed_l1}});
        layers.push_back({{"name", "L2"}, {"file", "L2.edges"}, {"m", l2.num_edges()},
                          {"kind", kind_to_json(spec.kind_l2.value_or(spec.kind))}, {"seed", seed_l2}});
    } else {
        const std::uint64_t seed_base = derive_seed(seed, "base");
        const std::uint64_t seed_split = derive_seed(seed, "split");
        const LayerGraph base = generate_layer(spec.n, spec.m, spec.kind, seed_base);
        std::tie(l1, l2) = split_layers(base, split, seed_split);
        meta["base"] = {{"m", base.num_edges()}, {"kind", kind_to_json(spec.kind)}, {"seed", seed_base}};
        meta["split_seed"] = seed_split;
        layers.push_back({{"name", "L1"}, {"file", "L1.edges"}, {"m", l1.num_edges()}});
        layers.push_back({{"name", "L2"}, {"file", "L2.edges"}, {"m", l2.num_edges()}});
    }
    meta["split"] = split_to_json(split);
    meta["layers"] = layers;

    std::filesystem::create_directories(dir);
    save_edge_list(l1, dir / "L1.edges");
    save_edge_list(l2, dir / "L2.edges");
    write_text(dir / "meta.json", meta.dump(2) + "\n");
}

std::vector<std::filesystem::path> build_suite(const Manifest& manifest, const std::filesystem::path& out_dir,
                                               unsigned threads) {
    if (manifest.datasets.empty()) throw UsageError("no datasets");
    std::unordered_set<std::string> ids;
    for (const auto& spec : manifest.datasets) {
        validate(spec);
        if (!ids.insert(spec.id).second) throw UsageError("duplicate dataset id '" + spec.id + "'");
    }

    const std::size_t count = manifest.datasets.size();
    std::vector<std::filesystem::path> dirs(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            dirs[i] = out_dir / manifest.datasets[i].id;
            try {
                write_dataset(manifest.datasets[i], manifest.seed, dirs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
        worker();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return dirs;
}

Manifest synthetic_suite_manifest(const std::string& prefix, const std::vector<std::pair<std::size_t, std::size_t>>& sizes,
                                  const std::vector<std::pair<int, int>>& splits, const LayerKind& kind_l1,
                                  const LayerKind& kind_l2, std::uint64_t seed) {
    Manifest m;
    m.seed = seed;
    for (const auto& [n, edges] : sizes) {
        for (const auto& [p1, p2] : splits) {
            GenSpec s;
            s.id = prefix + "_" + human_count(n) + "V" + human_count(edges) + "E_" + std::to_string(p1) + "_" +
                   std::to_string(p2);
            s.n = n;
            s.m = edges;
            s.kind = kind_l1;
            s.kind_l2 = kind_l2;
            s.split = SplitSpec::separate_generation(edges * static_cast<std::size_t>(p1) / 100,
                                                     edges * static_cast<std::size_t>(p2) / 100);
            m.datasets.push_back(std::move(s));
        }
    }
    return m;
}

Dataset load_dataset(const std::filesystem::path& dir) {
    const auto meta_path = dir / "meta.json";
    json meta;
    try {
        meta = json::parse(read_text(meta_path));
    } catch (const json::parse_error& e) {
        throw DataError(meta_path.string() + ": " + e.what());
    }
    try {
        const auto n = meta.at("n").get<std::size_t>();
        std::vector<NamedLayer> layers;
        if (meta.contains("layers")) {
            for (const auto& l : meta.at("layers")) {
                const auto name = l.at("name").get<std::string>();
                layers.push_back({name, load_edge_list(dir / l.value("file", name + ".edges"), n)});
            }
        } else {
            layers.push_back({"L1", load_edge_list(dir / "L1.edges", n)});
            layers.push_back({"L2", load_edge_list(dir / "L2.edges", n)});
        }
        auto id = meta.value("id", dir.filename().string());
        return Dataset{std::move(id), dir, MultilayerNetwork(std::move(layers)), std::move(meta)};
    } catch (const json::exception& e) {
        throw DataError(meta_path.string() + ": " + e.what());
    }
}

}  // namespace mln
