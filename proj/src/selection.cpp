#include "mln/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace mln {
namespace {

template <typename T>
VertexSet select_exact(std::span<const T> scores) {
    unsigned __int128 sum = 0;
    for (auto s : scores) sum += s;
    const auto n = static_cast<unsigned __int128>(scores.size());
    VertexSet out;
    for (std::size_t u = 0; u < scores.size(); ++u) {
        if (n * scores[u] >= sum) out.push_back(static_cast<VertexId>(u));
    }
    return out;
}

}  // namespace

VertexSet select_at_or_above_mean(std::span<const double> scores) {
    VertexSet out;
    if (scores.empty()) return out;
    long double sum = 0.0L;
    long double carry = 0.0L;
    for (double s : scores) {
        const long double t = sum + s;
        if (std::fabs(sum) >= std::fabs(static_cast<long double>(s))) {
            carry += (sum - t) + s;
        } else {
            carry += (s - t) + sum;
        }
        sum = t;
    }
    const long double mean = (sum + carry) / static_cast<long double>(scores.size());
    const long double cutoff = mean - std::fabs(mean) * kMeanTieTolerance;
    for (std::size_t u = 0; u < scores.size(); ++u) {
        if (static_cast<long double>(scores[u]) >= cutoff) out.push_back(static_cast<VertexId>(u));
    }
    return out;
}

VertexSet select_at_or_above_mean(std::span<const std::uint64_t> scores) { return select_exact(scores); }
VertexSet select_at_or_above_mean(std::span<const std::uint32_t> scores) { return select_exact(scores); }

VertexSet select_top_k(std::span<const double> scores, std::size_t k) {
    std::vector<VertexId> order(scores.size());
    std::iota(order.begin(), order.end(), VertexId{0});
    k = std::min(k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](VertexId a, VertexId b) { return scores[a] > scores[b] || (scores[a] == scores[b] && a < b); });
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace mln
