#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "mln/types.hpp"

namespace mln {

/// Agreement between an estimated vertex set and the ground truth.
///
/// Conventions for empty denominators: two empty sets agree perfectly (all
/// three scores 1.0); otherwise an empty denominator scores 0.0, so an empty
/// estimate never earns precision credit.
struct SetComparison {
    double jaccard = 1.0;
    double precision = 1.0;
    double recall = 1.0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

SetComparison compare_sets(const VertexSet& estimated, const VertexSet& truth);

struct SuiteSummary {
    std::size_t rows = 0;
    double mean_jaccard = 0.0;
    double mean_precision = 0.0;
    double mean_recall = 0.0;
};

/// Arithmetic means; throws UsageError on an empty list.
SuiteSummary summarize(std::span<const SetComparison> rows);

/// Mean relative gain mean((h - b) / b) over paired rows, as a fraction
/// (0.5 == +50%). Pairs whose baseline is 0 are skipped; nullopt if none remain.
std::optional<double> relative_gain(std::span<const double> heuristic, std::span<const double> baseline);

}  // namespace mln
