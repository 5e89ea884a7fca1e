#pragma once

#include <chrono>
#include <cstdint>
#include <span>

#include "mln/types.hpp"

namespace mln {

/// Relative slack used when comparing a real-valued score against the mean
/// of all scores. Scores that are mathematically equal can differ in the
/// last bits once summed, so values within this band of the mean count as
/// ties (and ties are selected).
inline constexpr double kMeanTieTolerance = 1e-12;

/// Vertices whose score is >= the arithmetic mean of `scores`. The mean is
/// accumulated in long double with Neumaier compensation, in vertex order.
VertexSet select_at_or_above_mean(std::span<const double> scores);

/// Exact variant for integer scores: u is selected iff n * score(u) >= sum.
VertexSet select_at_or_above_mean(std::span<const std::uint64_t> scores);
VertexSet select_at_or_above_mean(std::span<const std::uint32_t> scores);

/// The k highest scores; ties broken towards the lower vertex id.
VertexSet select_top_k(std::span<const double> scores, std::size_t k);

/// Monotonic wall-clock stopwatch reporting milliseconds.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace mln
