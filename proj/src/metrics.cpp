#include "mln/metrics.hpp"

#include <algorithm>

namespace mln {

SetComparison compare_sets(const VertexSet& estimated, const VertexSet& truth) {
    SetComparison c;
    std::size_t i = 0, j = 0;
    while (i < estimated.size() && j < truth.size()) {
        if (estimated[i] < truth[j]) {
            ++c.fp;
            ++i;
        } else if (truth[j] < estimated[i]) {
            ++c.fn;
            ++j;
        } else {
            ++c.tp;
            ++i;
            ++j;
        }
    }
    c.fp += estimated.size() - i;
    c.fn += truth.size() - j;

    if (estimated.empty() && truth.empty()) return c;
    auto ratio = [](std::size_t num, std::size_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    c.jaccard = ratio(c.tp, c.tp + c.fp + c.fn);
    c.precision = ratio(c.tp, c.tp + c.fp);
    c.recall = ratio(c.tp, c.tp + c.fn);
    return c;
}

SuiteSummary summarize(std::span<const SetComparison> rows) {
    if (rows.empty()) throw UsageError("cannot summarize an empty result list");
    SuiteSummary s;
    s.rows = rows.size();
    for (const auto& r : rows) {
        s.mean_jaccard += r.jaccard;
        s.mean_precision += r.precision;
        s.mean_recall += r.recall;
    }
    const auto n = static_cast<double>(rows.size());
    s.mean_jaccard /= n;
    s.mean_precision /= n;
    s.mean_recall /= n;
    return s;
}

std::optional<double> relative_gain(std::span<const double> heuristic, std::span<const double> baseline) {
    if (heuristic.size() != baseline.size()) throw UsageError("gain needs paired rows");
    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < heuristic.size(); ++i) {
        if (baseline[i] == 0.0) continue;
        total += (heuristic[i] - baseline[i]) / baseline[i];
        ++used;
    }
    if (used == 0) return std::nullopt;
    return total / static_cast<double>(used);
}

}  // namespace mln
