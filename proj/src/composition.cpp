#include "mln/composition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mln/selection.hpp"

namespace mln {
namespace {

template <typename Summary>
void require_same_n(const Summary& sx, const Summary& sy) {
    if (sx.n != sy.n) {
        throw UsageError("summaries disagree on vertex count (" + std::to_string(sx.n) + " vs " +
                         std::to_string(sy.n) + ")");
    }
}

template <typename Summary>
void require_degrees(const Summary& s) {
    if (s.deg.size() != s.n) throw UsageError("summary of layer '" + s.layer_name + "' carries no degree array");
}

const NeighborhoodMap& require_hub_neighborhoods(const DegreeSummary& s) {
    if (!s.hub_neighborhoods) {
        throw UsageError("summary of layer '" + s.layer_name + "' was analyzed without hub neighborhoods");
    }
    return *s.hub_neighborhoods;
}

std::size_t union_size(std::span<const VertexId> a, std::span<const VertexId> b) {
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
    return a.size() + b.size() - both;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersection(std::span<const VertexId> a, std::span<const VertexId> b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Shared tail of DC-A1 / DC-A2 / DC-A2-info: threshold the doubled estimates.
DegreeCompositionResult threshold_estimates(DegreeMethod method, std::vector<std::uint64_t> est_x2) {
    DegreeCompositionResult r;
    r.method = method;
    r.hubs = select_at_or_above_mean(std::span<const std::uint64_t>(est_x2));
    const auto sum = std::accumulate(est_x2.begin(), est_x2.end(), std::uint64_t{0});
    r.avg_est_deg = est_x2.empty() ? 0.0 : static_cast<double>(sum) / (2.0 * static_cast<double>(est_x2.size()));
    r.est_deg_x2 = std::move(est_x2);
    return r;
}

/// Doubled DC-A2 estimate: max(dx, dy) + min(dx + dy, n - 1).
std::uint64_t a2_estimate_x2(std::uint32_t dx, std::uint32_t dy, std::size_t n) {
    const std::uint64_t lo = std::max(dx, dy);
    const std::uint64_t hi = std::min<std::uint64_t>(std::uint64_t{dx} + dy, n - 1);
    return lo + hi;
}

/// DC-P1 / DC-P2 candidate filter: u in DH_x | DH_y is a hub when
/// n * |NBD_x(u) | NBD_y(u)| >= threshold_sum (i.e. the union size reaches the
/// average threshold_sum / n). A neighborhood not retained counts as empty.
VertexSet precision_filter(const DegreeSummary& sx, const DegreeSummary& sy, std::uint64_t threshold_sum) {
    const auto& nx = require_hub_neighborhoods(sx);
    const auto& ny = require_hub_neighborhoods(sy);
    VertexSet hubs;
    for (VertexId u : set_union(sx.hubs, sy.hubs)) {
        const auto a = nx.find(u).value_or(std::span<const VertexId>{});
        const auto b = ny.find(u).value_or(std::span<const VertexId>{});
        const auto size = static_cast<unsigned __int128>(union_size(a, b));
        if (size * sx.n >= threshold_sum) hubs.push_back(u);
    }
    return hubs;
}

template <typename Fn>
auto timed(Fn&& fn) {
    Stopwatch clock;
    auto r = fn();
    r.theta_time_ms = clock.elapsed_ms();
    return r;
}

}  // namespace

std::string to_string(DegreeMethod m) {
    switch (m) {
        case DegreeMethod::NaiveOr: return "naive";
        case DegreeMethod::DcA1: return "dc-a1";
        case DegreeMethod::DcA2: return "dc-a2";
        case DegreeMethod::DcA2Info: return "dc-a2-info";
        case DegreeMethod::DcP1: return "dc-p1";
        case DegreeMethod::DcP2: return "dc-p2";
    }
    return "?";
}

std::string to_string(ClosenessMethod m) {
    switch (m) {
        case ClosenessMethod::NaiveAnd: return "naive";
        case ClosenessMethod::Cc1: return "cc1";
        case ClosenessMethod::Cc2: return "cc2";
    }
    return "?";
}

DegreeCompositionResult naive_or(const DegreeSummary& sx, const DegreeSummary& sy) {
    return timed([&] {
        require_same_n(sx, sy);
        DegreeCompositionResult r;
        r.method = DegreeMethod::NaiveOr;
        r.hubs = set_union(sx.hubs, sy.hubs);
        r.avg_est_deg = std::max(sx.avg_deg(), sy.avg_deg());
        return r;
    });
}

DegreeCompositionResult dc_a1(const DegreeSummary& sx, const DegreeSummary& sy) {
    return timed([&] {
        require_same_n(sx, sy);
        require_degrees(sx);
        require_degrees(sy);
        std::vector<std::uint64_t> est(sx.n);
        for (std::size_t u = 0; u < sx.n; ++u) est[u] = 2 * std::uint64_t{std::max(sx.deg[u], sy.deg[u])};
        return threshold_estimates(DegreeMethod::DcA1, std::move(est));
    });
}

DegreeCompositionResult dc_a2(const DegreeSummary& sx, const DegreeSummary& sy) {
    return timed([&] {
        require_same_n(sx, sy);
        require_degrees(sx);
        require_degrees(sy);
        std::vector<std::uint64_t> est(sx.n);
        for (std::size_t u = 0; u < sx.n; ++u) est[u] = a2_estimate_x2(sx.deg[u], sy.deg[u], sx.n);
        return threshold_estimates(DegreeMethod::DcA2, std::move(est));
    });
}

DegreeCompositionResult dc_a2_with_info(const DegreeSummary& sx, const DegreeSummary& sy, double fraction) {
    return timed([&] {
        require_same_n(sx, sy);
        require_degrees(sx);
        require_degrees(sy);

        auto effective = [](const RetentionPolicy& p) {
            switch (p.kind) {
                case RetentionKind::None: return RetentionPolicy::sample(0.0, p.seed);
                case RetentionKind::All: return RetentionPolicy::sample(1.0, 0);
                default: return p;
            }
        };
        const auto px = effective(sx.retention);
        const auto py = effective(sy.retention);
        if (px.kind != RetentionKind::Fraction || py.kind != RetentionKind::Fraction) {
            throw UsageError("dc-a2-info needs summaries analyzed with fractional or full retention");
        }
        const bool full = px.fraction == 1.0 && py.fraction == 1.0;
        if (px.fraction != py.fraction || (!full && px.seed != py.seed)) {
            throw UsageError("dc-a2-info summaries were retained with different fractions or seeds");
        }
        if (std::fabs(px.fraction - fraction) > 1e-12) {
            throw UsageError("dc-a2-info fraction does not match the summaries' retention");
        }

        static const NeighborhoodMap nothing;
        const auto& nx = sx.full_neighborhoods ? *sx.full_neighborhoods : nothing;
        const auto& ny = sy.full_neighborhoods ? *sy.full_neighborhoods : nothing;
        if (!std::equal(nx.keys().begin(), nx.keys().end(), ny.keys().begin(), ny.keys().end())) {
            throw UsageError("dc-a2-info summaries retained different vertex subsets");
        }

        std::vector<std::uint64_t> est(sx.n);
        for (std::size_t u = 0; u < sx.n; ++u) est[u] = a2_estimate_x2(sx.deg[u], sy.deg[u], sx.n);
        for (std::size_t i = 0; i < nx.size(); ++i) {
            const VertexId u = nx.keys()[i];
            est[u] = 2 * static_cast<std::uint64_t>(union_size(*nx.find(u), *ny.find(u)));
        }
        auto r = threshold_estimates(DegreeMethod::DcA2Info, std::move(est));
        r.info_fraction = fraction;
        return r;
    });
}

DegreeCompositionResult dc_p1(const DegreeSummary& sx, const DegreeSummary& sy) {
    return timed([&] {
        require_same_n(sx, sy);
        DegreeCompositionResult r;
        r.method = DegreeMethod::DcP1;
        const std::uint64_t threshold_sum = std::max(sx.degree_sum, sy.degree_sum);
        r.avg_est_deg = std::max(sx.avg_deg(), sy.avg_deg());
        r.hubs = precision_filter(sx, sy, threshold_sum);
        return r;
    });
}

DegreeCompositionResult dc_p2(const DegreeSummary& sx, const DegreeSummary& sy) {
    return timed([&] {
        require_same_n(sx, sy);
        require_degrees(sx);
        require_degrees(sy);
        DegreeCompositionResult r;
        r.method = DegreeMethod::DcP2;
        std::vector<std::uint64_t> est(sx.n);
        std::uint64_t sum = 0;
        for (std::size_t u = 0; u < sx.n; ++u) {
            const std::uint64_t m = std::max(sx.deg[u], sy.deg[u]);
            est[u] = 2 * m;
            sum += m;
        }
        r.avg_est_deg = sx.n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(sx.n);
        r.hubs = precision_filter(sx, sy, sum);
        r.est_deg_x2 = std::move(est);
        return r;
    });
}

ClosenessCompositionResult naive_and_cc(const ClosenessSummary& sx, const ClosenessSummary& sy) {
    return timed([&] {
        require_same_n(sx, sy);
        ClosenessCompositionResult r;
        r.method = ClosenessMethod::NaiveAnd;
        r.cc_nodes = set_intersection(sx.cc_nodes, sy.cc_nodes);
        return r;
    });
}

ClosenessCompositionResult cc1(const ClosenessSummary& sx, const ClosenessSummary& sy, const Cc1Options& opts) {
    return timed([&] {
        require_same_n(sx, sy);
        require_degrees(sx);
        require_degrees(sy);
        if (sx.sum_dist.size() != sx.n || sy.sum_dist.size() != sy.n) {
            throw UsageError("cc1 needs per-vertex distance sums in both summaries");
        }
        if (!sx.cc_neighborhoods || !sy.cc_neighborhoods) {
            throw UsageError("cc1 needs CC-node neighborhoods in both summaries");
        }
        const std::size_t n = sx.n;
        constexpr double inf = std::numeric_limits<double>::infinity();

        // Ratio of distance sum to the largest degree u can keep in the AND graph.
        auto ratios = [&](const ClosenessSummary& s, double& mean) {
            std::vector<double> out(n, inf);
            long double total = 0.0L;
            std::size_t finite = 0;
            for (std::size_t u = 0; u < n; ++u) {
                const auto d = std::min(sx.deg[u], sy.deg[u]);
                if (d == 0) continue;
                out[u] = static_cast<double>(s.sum_dist[u]) / static_cast<double>(d);
                total += out[u];
                ++finite;
            }
            mean = finite == 0 ? 0.0 : static_cast<double>(total / static_cast<long double>(finite));
            return out;
        };
        double mean_x = 0.0, mean_y = 0.0;
        auto rx = ratios(sx, mean_x);
        auto ry = ratios(sy, mean_y);
        const double avg = std::max(mean_x, mean_y);

        auto central = [&](std::span<const VertexId> nbd, const std::vector<double>& ratio) {
            VertexSet out;
            for (VertexId v : nbd) {
                if (ratio[v] < avg) out.push_back(v);
            }
            return out;
        };

        std::vector<std::uint8_t> chosen(n, 0);
        for (VertexId u : set_intersection(sx.cc_nodes, sy.cc_nodes)) {
            const auto nx = sx.cc_neighborhoods->find(u);
            const auto ny = sy.cc_neighborhoods->find(u);
            if (!nx || !ny) throw UsageError("cc1: CC node without a retained neighborhood");
            const auto overlap = set_intersection(central(*nx, rx), central(*ny, ry));
            const bool significant = overlap.size() >= opts.overlap_threshold;
            if (significant) {
                for (VertexId v : overlap) chosen[v] = 1;
            }
            if (significant || opts.include_common) chosen[u] = 1;
        }

        ClosenessCompositionResult r;
        r.method = ClosenessMethod::Cc1;
        for (std::size_t u = 0; u < n; ++u) {
            if (chosen[u]) r.cc_nodes.push_back(static_cast<VertexId>(u));
        }
        r.avg_deg_dist_ratio = avg;
        r.deg_dist_ratio_x = std::move(rx);
        r.deg_dist_ratio_y = std::move(ry);
        return r;
    });
}

ClosenessCompositionResult cc2(const ClosenessSummary& sx, const ClosenessSummary& sy, const Cc2Selection& selection) {
    return timed([&] {
        require_same_n(sx, sy);
        if (sx.sum_dist.size() != sx.n || sy.sum_dist.size() != sy.n) {
            throw UsageError("cc2 needs per-vertex distance sums in both summaries");
        }
        const std::size_t n = sx.n;
        ClosenessCompositionResult r;
        r.method = ClosenessMethod::Cc2;
        std::vector<std::uint64_t> est(n);
        for (std::size_t u = 0; u < n; ++u) est[u] = std::max(sx.sum_dist[u], sy.sum_dist[u]);

        if (n < 2) {
            // No distances to estimate from; every vertex is trivially central.
            r.cc_nodes.resize(n);
            std::iota(r.cc_nodes.begin(), r.cc_nodes.end(), VertexId{0});
        } else {
            std::vector<double> value(n);
            for (std::size_t u = 0; u < n; ++u) value[u] = static_cast<double>(n - 1) / static_cast<double>(est[u]);
            r.cc_nodes = selection.mode == Cc2Selection::Mode::TopK ? select_top_k(value, selection.k)
                                                                    : select_at_or_above_mean(value);
        }
        r.est_sum_dist = std::move(est);
        return r;
    });
}

}  // namespace mln
