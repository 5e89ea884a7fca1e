#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mln/layer_analysis.hpp"

namespace mln {

// Composition functions. Each one combines two layer summaries into an
// estimate of the aggregated network's hub / CC-node set. None of them ever
// sees a LayerGraph.

enum class DegreeMethod { NaiveOr, DcA1, DcA2, DcA2Info, DcP1, DcP2 };
enum class ClosenessMethod { NaiveAnd, Cc1, Cc2 };

std::string to_string(DegreeMethod m);
std::string to_string(ClosenessMethod m);

struct DegreeCompositionResult {
    DegreeMethod method = DegreeMethod::NaiveOr;
    double info_fraction = 0.0;  // DcA2Info only
    /// Estimated OR degree, stored doubled so DC-A2's halves stay integral.
    std::optional<std::vector<std::uint64_t>> est_deg_x2;
    /// Average estimated degree the threshold was taken against.
    double avg_est_deg = 0.0;
    VertexSet hubs;
    double theta_time_ms = 0.0;

    double est_deg(VertexId u) const { return static_cast<double>((*est_deg_x2)[u]) / 2.0; }
};

struct ClosenessCompositionResult {
    ClosenessMethod method = ClosenessMethod::NaiveAnd;
    std::optional<std::vector<std::uint64_t>> est_sum_dist;  // CC2
    std::optional<std::vector<double>> deg_dist_ratio_x;     // CC1; +inf where min degree is 0
    std::optional<std::vector<double>> deg_dist_ratio_y;
    double avg_deg_dist_ratio = 0.0;
    VertexSet cc_nodes;
    double theta_time_ms = 0.0;
};

DegreeCompositionResult naive_or(const DegreeSummary& sx, const DegreeSummary& sy);
DegreeCompositionResult dc_a1(const DegreeSummary& sx, const DegreeSummary& sy);
DegreeCompositionResult dc_a2(const DegreeSummary& sx, const DegreeSummary& sy);

/// DC-A2 where vertices with neighborhoods retained in both layers use the
/// exact OR degree |NBD_x(u) | NBD_y(u)|. Both summaries must come from the
/// same fractional (or full) retention; `fraction` must match it.
DegreeCompositionResult dc_a2_with_info(const DegreeSummary& sx, const DegreeSummary& sy, double fraction);

DegreeCompositionResult dc_p1(const DegreeSummary& sx, const DegreeSummary& sy);
DegreeCompositionResult dc_p2(const DegreeSummary& sx, const DegreeSummary& sy);

ClosenessCompositionResult naive_and_cc(const ClosenessSummary& sx, const ClosenessSummary& sy);

struct Cc1Options {
    /// Minimum size of the central-neighbor overlap that adds its members.
    std::size_t overlap_threshold = 2;
    /// Whether a common CC node is reported even when its overlap is too small.
    bool include_common = true;
};

ClosenessCompositionResult cc1(const ClosenessSummary& sx, const ClosenessSummary& sy, const Cc1Options& opts = {});

struct Cc2Selection {
    enum class Mode { AboveAverage, TopK } mode = Mode::AboveAverage;
    std::size_t k = 0;

    static Cc2Selection above_average() { return {}; }
    static Cc2Selection top_k(std::size_t k) { return {Mode::TopK, k}; }
};

ClosenessCompositionResult cc2(const ClosenessSummary& sx, const ClosenessSummary& sy,
                               const Cc2Selection& selection = {});

}  // namespace mln
