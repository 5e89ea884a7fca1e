#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mln/composition.hpp"
#include "mln/metrics.hpp"
#include "mln/synth.hpp"

namespace mln {

inline constexpr const char* kResultsSchema = "mln-results/1";

/// One requested composition method. `label` is what lands in the CSV
/// ("dc-a2-info@0.25" for the information sweep).
struct MethodSpec {
    AnalysisKind kind = AnalysisKind::Degree;
    DegreeMethod degree = DegreeMethod::NaiveOr;
    ClosenessMethod closeness = ClosenessMethod::NaiveAnd;
    double info_fraction = 0.0;
    std::string label;
};

/// Expands a comma-separated method list. dc-a2-info is repeated once per
/// info fraction. Throws UsageError for unknown names and for methods that
/// do not belong to `kind`.
std::vector<MethodSpec> parse_methods(const std::vector<std::string>& names, AnalysisKind kind,
                                      const std::vector<double>& info_fractions);

AnalysisKind parse_kind(const std::string& text);

struct RunConfig {
    AnalysisKind kind = AnalysisKind::Degree;
    std::vector<MethodSpec> methods;
    /// Retention for degree methods other than dc-a2-info. Empty: the least
    /// each method needs (hub neighborhoods for dc-p1/dc-p2, nothing otherwise).
    std::optional<RetentionPolicy> retain;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    /// Ground truth is skipped for networks with more vertices than this.
    std::size_t gt_cap = std::numeric_limits<std::size_t>::max();
    Cc1Options cc1;
    Cc2Selection cc2;
};

struct ResultRow {
    std::string dataset_id;
    std::size_t n = 0;
    std::size_t edges_l1 = 0;
    std::size_t edges_l2 = 0;
    std::optional<std::size_t> edges_agg;  // unknown without ground truth
    std::string method;
    std::optional<SetComparison> scores;   // unavailable when ground truth was skipped
    std::vector<double> psi_time_per_layer;
    double psi_time_max = 0.0;
    double theta_time = 0.0;
    std::optional<double> gt_time;

    std::optional<double> speedup() const;
};

struct EvaluationReport {
    std::vector<ResultRow> rows;
    std::map<std::string, SuiteSummary> per_method;  // rows with scores only
};

/// Runs Psi, every requested Theta and the ground truth on each dataset.
/// Datasets are processed one at a time so timings do not compete.
EvaluationReport run_experiment(const std::vector<Dataset>& datasets, const RunConfig& config);

/// Per-method means over the rows that carry scores.
std::map<std::string, SuiteSummary> summarize_by_method(const std::vector<ResultRow>& rows);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
/// Throws DataError if the schema line or header differ from this version.
std::vector<ResultRow> read_results_csv(std::istream& in, const std::string& source = "<csv>");
std::vector<ResultRow> read_results_csv(const std::filesystem::path& path);

nlohmann::json report_to_json(const EvaluationReport& report);

struct MethodGain {
    std::string method;
    SuiteSummary summary;
    std::optional<double> jaccard_gain;  // mean relative gain over the baseline, per dataset
};

struct SuiteReport {
    std::string suite;
    std::string baseline;
    std::vector<MethodGain> methods;  // first-seen order, baseline included
};

/// Aggregates one results file. Throws DataError if `baseline` never occurs.
SuiteReport build_suite_report(const std::string& suite, const std::vector<ResultRow>& rows,
                               const std::string& baseline);

/// Fixed-width table: one line per method with mean scores and gain.
std::string format_suite_report(const SuiteReport& report);

/// Writes <suite>.jaccard.tsv (dataset x method) and <suite>.timing.tsv
/// (dataset, gt time, decoupled time per method) under `dir`.
void write_plot_series(const std::filesystem::path& dir, const std::string& suite, const std::vector<ResultRow>& rows);

}  // namespace mln
