#include "mln/layer_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include <omp.h>

#include "mln/random.hpp"
#include "mln/selection.hpp"

namespace mln {

RetentionPolicy RetentionPolicy::sample(double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw UsageError("retention fraction must lie in [0, 1]");
    return {RetentionKind::Fraction, fraction, seed};
}

RetentionPolicy RetentionPolicy::parse(const std::string& text, std::uint64_t seed) {
    if (text == "none") return none();
    if (text == "hubs" || text == "hubs-only") return hubs_only();
    if (text == "all") return all();
    constexpr std::string_view prefix = "fraction:";
    if (text.starts_with(prefix)) {
        try {
            return sample(std::stod(text.substr(prefix.size())), seed);
        } catch (const std::logic_error&) {
            throw UsageError("bad retention fraction in '" + text + "'");
        }
    }
    throw UsageError("unknown retention policy '" + text + "'");
}

std::string RetentionPolicy::to_string() const {
    switch (kind) {
        case RetentionKind::None: return "none";
        case RetentionKind::HubsOnly: return "hubs";
        case RetentionKind::All: return "all";
        case RetentionKind::Fraction: {
            auto s = std::to_string(fraction);
            s.erase(s.find_last_not_of('0') + 1);
            if (s.back() == '.') s.pop_back();
            return "fraction:" + s;
        }
    }
    return "none";
}

NeighborhoodMap NeighborhoodMap::capture(const LayerGraph& g, std::span<const VertexId> keys) {
    NeighborhoodMap m;
    m.keys_.assign(keys.begin(), keys.end());
    m.offsets_.reserve(keys.size() + 1);
    std::uint64_t total = 0;
    for (VertexId u : keys) total += g.degree(u);
    m.neighbors_.reserve(total);
    for (VertexId u : keys) {
        auto nb = g.neighbors(u);
        m.neighbors_.insert(m.neighbors_.end(), nb.begin(), nb.end());
        m.offsets_.push_back(m.neighbors_.size());
    }
    return m;
}

NeighborhoodMap NeighborhoodMap::from_parts(std::vector<VertexId> keys, std::vector<std::uint64_t> offsets,
                                            std::vector<VertexId> neighbors) {
    if (offsets.size() != keys.size() + 1 || offsets.front() != 0 || offsets.back() != neighbors.size() ||
        !std::is_sorted(offsets.begin(), offsets.end()) ||
        std::adjacent_find(keys.begin(), keys.end(), std::greater_equal<>()) != keys.end()) {
        throw DataError("malformed neighborhood table");
    }
    NeighborhoodMap m;
    m.keys_ = std::move(keys);
    m.offsets_ = std::move(offsets);
    m.neighbors_ = std::move(neighbors);
    return m;
}

bool NeighborhoodMap::contains(VertexId u) const { return std::binary_search(keys_.begin(), keys_.end(), u); }

std::optional<std::span<const VertexId>> NeighborhoodMap::find(VertexId u) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), u);
    if (it == keys_.end() || *it != u) return std::nullopt;
    const auto i = static_cast<std::size_t>(it - keys_.begin());
    return std::span<const VertexId>(neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]);
}

VertexSet retained_subset(std::size_t n, double fraction, std::uint64_t seed) {
    const auto want = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    const auto count = std::min(n, want);
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), VertexId{0});
    Rng rng(seed);
    rng.shuffle(perm.begin(), perm.end());
    perm.resize(count);
    std::sort(perm.begin(), perm.end());
    return perm;
}

DegreeSummary analyze_degree(const LayerGraph& g, const RetentionPolicy& retain, std::string layer_name) {
    Stopwatch clock;
    DegreeSummary s;
    s.layer_name = std::move(layer_name);
    s.n = g.num_vertices();
    s.retention = retain;
    s.deg.resize(s.n);
    for (VertexId u = 0; u < s.n; ++u) s.deg[u] = g.degree(u);
    s.degree_sum = 2 * static_cast<std::uint64_t>(g.num_edges());
    s.hubs = select_at_or_above_mean(std::span<const std::uint32_t>(s.deg));

    switch (retain.kind) {
        case RetentionKind::None: break;
        case RetentionKind::HubsOnly: s.hub_neighborhoods = NeighborhoodMap::capture(g, s.hubs); break;
        case RetentionKind::All: {
            s.hub_neighborhoods = NeighborhoodMap::capture(g, s.hubs);
            std::vector<VertexId> everyone(s.n);
            std::iota(everyone.begin(), everyone.end(), VertexId{0});
            s.full_neighborhoods = NeighborhoodMap::capture(g, everyone);
            break;
        }
        case RetentionKind::Fraction:
            s.full_neighborhoods = NeighborhoodMap::capture(g, retained_subset(s.n, retain.fraction, retain.seed));
            break;
    }
    s.psi_time_ms = clock.elapsed_ms();
    return s;
}

namespace {

struct BfsTotals {
    std::uint64_t finite_sum = 0;  // over reachable vertices only
    std::uint32_t reached = 0;     // including the source
};

/// Single-source BFS. `dist` must be all -1 on entry and is restored on exit.
BfsTotals bfs_from(const LayerGraph& g, VertexId source, std::vector<std::int32_t>& dist,
                   std::vector<VertexId>& queue) {
    queue.clear();
    queue.push_back(source);
    dist[source] = 0;
    std::uint64_t sum = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId u = queue[head];
        const std::int32_t du = dist[u];
        sum += static_cast<std::uint64_t>(du);
        for (VertexId v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    for (VertexId v : queue) dist[v] = -1;
    return {sum, static_cast<std::uint32_t>(queue.size())};
}

}  // namespace

ClosenessSummary analyze_closeness(const LayerGraph& g, unsigned threads, std::string layer_name) {
    Stopwatch clock;
    ClosenessSummary s;
    s.layer_name = std::move(layer_name);
    const std::size_t n = g.num_vertices();
    s.n = n;
    s.deg.resize(n);
    s.sum_dist.resize(n);
    s.cc_value.resize(n);
    s.component_size.resize(n);

    auto record = [&](VertexId u, const BfsTotals& t) {
        s.deg[u] = g.degree(u);
        s.sum_dist[u] = t.finite_sum + static_cast<std::uint64_t>(n - t.reached) * n;
        s.component_size[u] = t.reached;
        if (t.reached > 1 && t.finite_sum > 0) {
            const double r1 = static_cast<double>(t.reached - 1);
            s.cc_value[u] = (r1 / static_cast<double>(n - 1)) * (r1 / static_cast<double>(t.finite_sum));
        } else {
            s.cc_value[u] = 0.0;
        }
    };

    const auto sn = static_cast<std::int64_t>(n);
    if (threads <= 1) {
        std::vector<std::int32_t> dist(n, -1);
        std::vector<VertexId> queue;
        queue.reserve(n);
        for (std::int64_t u = 0; u < sn; ++u) record(static_cast<VertexId>(u), bfs_from(g, static_cast<VertexId>(u), dist, queue));
    } else {
#pragma omp parallel num_threads(static_cast<int>(threads))
        {
            std::vector<std::int32_t> dist(n, -1);
            std::vector<VertexId> queue;
            queue.reserve(n);
#pragma omp for schedule(dynamic, 16)
            for (std::int64_t u = 0; u < sn; ++u) {
                record(static_cast<VertexId>(u), bfs_from(g, static_cast<VertexId>(u), dist, queue));
            }
        }
    }

    s.cc_nodes = select_at_or_above_mean(std::span<const double>(s.cc_value));
    s.cc_neighborhoods = NeighborhoodMap::capture(g, s.cc_nodes);
    s.psi_time_ms = clock.elapsed_ms();
    return s;
}

double LayerAnalysis::max_psi_time_ms() const {
    return psi_time_ms.empty() ? 0.0 : *std::max_element(psi_time_ms.begin(), psi_time_ms.end());
}

std::vector<DegreeSummary> LayerAnalysis::degree() const {
    std::vector<DegreeSummary> out;
    for (const auto& s : summaries) {
        if (!std::holds_alternative<DegreeSummary>(s)) throw UsageError("layer analysis holds closeness summaries");
        out.push_back(std::get<DegreeSummary>(s));
    }
    return out;
}

std::vector<ClosenessSummary> LayerAnalysis::closeness() const {
    std::vector<ClosenessSummary> out;
    for (const auto& s : summaries) {
        if (!std::holds_alternative<ClosenessSummary>(s)) throw UsageError("layer analysis holds degree summaries");
        out.push_back(std::get<ClosenessSummary>(s));
    }
    return out;
}

LayerAnalysis analyze_layers(const MultilayerNetwork& mln, AnalysisKind kind, const RetentionPolicy& retain,
                             unsigned threads) {
    const std::size_t count = mln.num_layers();
    LayerAnalysis out;
    out.summaries.resize(count);
    out.psi_time_ms.resize(count);
    std::vector<std::exception_ptr> errors(count);

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    const unsigned inner = std::max(1u, threads / workers);

    auto run_one = [&](std::size_t i) {
        const auto& layer = mln.layer(i);
        try {
            if (kind == AnalysisKind::Degree) {
                auto s = analyze_degree(layer.graph, retain, layer.name);
                out.psi_time_ms[i] = s.psi_time_ms;
                out.summaries[i] = std::move(s);
            } else {
                auto s = analyze_closeness(layer.graph, inner, layer.name);
                out.psi_time_ms[i] = s.psi_time_ms;
                out.summaries[i] = std::move(s);
            }
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) run_one(i);
            });
        }
    }

    for (std::size_t i = 0; i < count; ++i) {
        if (!errors[i]) continue;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const std::exception& e) {
            throw DataError("layer '" + mln.layer(i).name + "': " + e.what());
        }
    }
    return out;
}

}  // namespace mln
