#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mln/graph.hpp"

namespace mln {

/// Recursive-matrix quadrant probabilities. The default skew is the usual
/// "real-world-like" setting; noise is not applied.
struct RmatParams {
    double a = 0.57;
    double b = 0.19;
    double c = 0.19;
    double d = 0.05;
};

/// Normally distributed degree sequence. Without an explicit mean the
/// generator derives it from the edge budget as 2m/n.
struct NormalParams {
    std::optional<double> mean_deg;
    double sd_deg = 0.0;
};

using LayerKind = std::variant<RmatParams, NormalParams>;

struct SplitSpec {
    enum class Mode { Partition, IndependentSample, SeparateGeneration };
    Mode mode = Mode::SeparateGeneration;
    double p1 = 0.5;  // Partition / IndependentSample
    double p2 = 0.5;
    std::size_t m1 = 0;  // SeparateGeneration edge budgets
    std::size_t m2 = 0;

    static SplitSpec partition(double p1, double p2) { return {Mode::Partition, p1, p2, 0, 0}; }
    static SplitSpec independent_sample(double p1, double p2) { return {Mode::IndependentSample, p1, p2, 0, 0}; }
    static SplitSpec separate_generation(std::size_t m1, std::size_t m2) {
        return {Mode::SeparateGeneration, 0.0, 0.0, m1, m2};
    }
};

/// One dataset of a suite: either a single generated graph (no split), a
/// base graph split into two layers, or two separately generated layers.
struct GenSpec {
    std::string id;
    std::size_t n = 0;
    std::size_t m = 0;  // edge budget of the single/base graph
    LayerKind kind = RmatParams{};
    std::optional<LayerKind> kind_l2;  // second layer's kind for SeparateGeneration
    std::optional<std::uint64_t> seed;
    std::optional<SplitSpec> split;
};

/// Throws UsageError when probabilities or sizes are out of range.
void validate(const GenSpec& spec);

LayerGraph generate_rmat(std::size_t n, std::size_t m, const RmatParams& params, std::uint64_t seed);

/// Degrees ~ N(mean, sd) rounded and clamped to [0, n-1], parity fixed, then
/// realized by configuration-model pairing with edge-swap repair of
/// self-loops and repeated pairs. Throws DataError if repair fails.
LayerGraph generate_normal(std::size_t n, const NormalParams& params, std::uint64_t seed,
                           std::size_t edge_budget = 0);

/// Generates the single graph described by (n, m, kind).
LayerGraph generate_layer(std::size_t n, std::size_t m, const LayerKind& kind, std::uint64_t seed);

/// Partition: every base edge lands in exactly one layer. IndependentSample:
/// each layer keeps each edge independently. SeparateGeneration is not a split.
std::pair<LayerGraph, LayerGraph> split_layers(const LayerGraph& base, const SplitSpec& split, std::uint64_t seed);

/// Sample skewness of the degree distribution.
double degree_skewness(const LayerGraph& g);

struct Manifest {
    std::uint64_t seed = 0;
    std::vector<GenSpec> datasets;
};

Manifest manifest_from_json(const nlohmann::json& j);
nlohmann::json manifest_to_json(const Manifest& m);
Manifest load_manifest(const std::filesystem::path& path);

inline constexpr const char* kGeneratorVersion = "mln-synth/1";

/// Generates one dataset into `dir` (L1.edges, L2.edges, meta.json).
void write_dataset(const GenSpec& spec, std::uint64_t manifest_seed, const std::filesystem::path& dir);

/// Writes every dataset of the manifest under out_dir/<id>/, `threads`
/// datasets at a time. Returns the dataset directories in manifest order.
std::vector<std::filesystem::path> build_suite(const Manifest& manifest, const std::filesystem::path& out_dir,
                                               unsigned threads = 1);

/// Manifest in the shape of the power-law/power-law synthetic suite: every
/// (n, m) base size crossed with every layer edge split, layers generated
/// separately with per-layer budgets m*p1 and m*p2.
Manifest synthetic_suite_manifest(const std::string& prefix, const std::vector<std::pair<std::size_t, std::size_t>>& sizes,
                                  const std::vector<std::pair<int, int>>& splits, const LayerKind& kind_l1,
                                  const LayerKind& kind_l2, std::uint64_t seed);

struct Dataset {
    std::string id;
    std::filesystem::path dir;
    MultilayerNetwork mln;
    nlohmann::json meta;
};

/// Reads a dataset directory written by build_suite (or by hand: two edge
/// lists plus a meta.json holding at least "n").
Dataset load_dataset(const std::filesystem::path& dir);

}  // namespace mln
