// mln: generate datasets, run the per-layer analysis and composition, and
// benchmark the heuristics against the aggregated-network ground truth.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "mln/aggregation.hpp"
#include "mln/bench.hpp"
#include "mln/psi_artifact.hpp"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kData = 2 };

struct Globals {
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::string out;
    std::string format = "csv";
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("mln");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("MLN_LOG")) {
        const auto level = spdlog::level::from_str(env);
        if (level == spdlog::level::off && std::string(env) != "off") {
            spdlog::warn("MLN_LOG='{}' is not a log level; keeping 'warn'", env);
        } else {
            spdlog::set_level(level);
        }
    }
}

// Writes to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.out, std::ios::binary | std::ios::trunc);
    if (!out) throw mln::DataError("cannot write " + g.out);
    out << text;
}

std::string render_set(const Globals& g, const std::string& label, const mln::VertexSet& set,
                       const json& extra) {
    if (g.format == "json") {
        json j = extra;
        j[label] = set;
        return j.dump(2) + "\n";
    }
    std::string out = label + "\n";
    for (auto v : set) out += std::to_string(v) + "\n";
    return out;
}

std::vector<double> parse_fractions(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const auto& s : items) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(s, &used));
            if (used != s.size()) throw std::invalid_argument(s);
        } catch (const std::logic_error&) {
            throw mln::UsageError("bad info fraction '" + s + "'");
        }
    }
    return out;
}

mln::Cc2Selection cc2_selection(std::optional<std::size_t> top_k) {
    return top_k ? mln::Cc2Selection::top_k(*top_k) : mln::Cc2Selection::above_average();
}

int cmd_generate(const Globals& g, const std::string& manifest_path) {
    auto manifest = mln::load_manifest(manifest_path);
    if (g.seed) manifest.seed = *g.seed;
    const std::string out = g.out.empty() ? "data" : g.out;
    const auto dirs = mln::build_suite(manifest, out, g.threads);
    for (const auto& d : dirs) std::cout << d.string() << "\n";
    spdlog::info("generated {} datasets under {}", dirs.size(), out);
    return kOk;
}

int cmd_analyze(const Globals& g, const std::string& dir, const std::string& kind_text, const std::string& retain) {
    const auto kind = mln::parse_kind(kind_text);
    const auto policy = mln::RetentionPolicy::parse(retain, g.seed.value_or(0));
    const auto ds = mln::load_dataset(dir);
    const auto analysis = mln::analyze_layers(ds.mln, kind, policy, g.threads);

    const std::filesystem::path out = g.out.empty() ? std::filesystem::path(dir) / "psi" : std::filesystem::path(g.out);
    std::filesystem::create_directories(out);
    for (std::size_t i = 0; i < analysis.summaries.size(); ++i) {
        const auto path = out / (ds.mln.layer(i).name + ".psi.json");
        mln::write_psi_artifact(path, analysis.summaries[i]);
        std::cout << path.string() << "\t" << analysis.psi_time_ms[i] << " ms\n";
    }
    return kOk;
}

int cmd_compose(const Globals& g, const std::string& kind_text, const std::string& method,
                const std::vector<std::string>& psi, const std::vector<std::string>& fractions,
                std::size_t overlap, std::optional<std::size_t> top_k) {
    const auto kind = mln::parse_kind(kind_text);
    const auto specs = mln::parse_methods({method}, kind, parse_fractions(fractions));
    if (specs.size() != 1) throw mln::UsageError("compose takes exactly one info fraction");
    if (psi.size() != 2) throw mln::UsageError("compose needs two Psi artifacts");
    const auto sx = mln::read_psi_artifact(psi[0]);
    const auto sy = mln::read_psi_artifact(psi[1]);
    const auto& m = specs.front();

    if (kind == mln::AnalysisKind::Degree) {
        const auto* x = std::get_if<mln::DegreeSummary>(&sx);
        const auto* y = std::get_if<mln::DegreeSummary>(&sy);
        if (!x || !y) throw mln::UsageError("degree composition needs degree Psi artifacts");
        mln::DegreeCompositionResult r;
        switch (m.degree) {
            case mln::DegreeMethod::NaiveOr: r = mln::naive_or(*x, *y); break;
            case mln::DegreeMethod::DcA1: r = mln::dc_a1(*x, *y); break;
            case mln::DegreeMethod::DcA2: r = mln::dc_a2(*x, *y); break;
            case mln::DegreeMethod::DcA2Info: r = mln::dc_a2_with_info(*x, *y, m.info_fraction); break;
            case mln::DegreeMethod::DcP1: r = mln::dc_p1(*x, *y); break;
            case mln::DegreeMethod::DcP2: r = mln::dc_p2(*x, *y); break;
        }
        emit(g, render_set(g, "hubs", r.hubs,
                           {{"method", m.label}, {"avg_est_deg", r.avg_est_deg}, {"theta_time_ms", r.theta_time_ms}}));
    } else {
        const auto* x = std::get_if<mln::ClosenessSummary>(&sx);
        const auto* y = std::get_if<mln::ClosenessSummary>(&sy);
        if (!x || !y) throw mln::UsageError("closeness composition needs closeness Psi artifacts");
        mln::ClosenessCompositionResult r;
        switch (m.closeness) {
            case mln::ClosenessMethod::NaiveAnd: r = mln::naive_and_cc(*x, *y); break;
            case mln::ClosenessMethod::Cc1: r = mln::cc1(*x, *y, {overlap, true}); break;
            case mln::ClosenessMethod::Cc2: r = mln::cc2(*x, *y, cc2_selection(top_k)); break;
        }
        emit(g, render_set(g, "cc_nodes", r.cc_nodes, {{"method", m.label}, {"theta_time_ms", r.theta_time_ms}}));
    }
    return kOk;
}

int cmd_ground_truth(const Globals& g, const std::string& dir, const std::string& kind_text) {
    const auto kind = mln::parse_kind(kind_text);
    const auto ds = mln::load_dataset(dir);
    if (ds.mln.num_layers() != 2) throw mln::DataError("ground truth needs exactly two layers");
    const auto& x = ds.mln.layer(0).graph;
    const auto& y = ds.mln.layer(1).graph;
    if (kind == mln::AnalysisKind::Degree) {
        const auto gt = mln::ground_truth_degree_hubs(x, y, g.threads);
        emit(g, render_set(g, "hubs", gt.hubs,
                           {{"dataset_id", ds.id}, {"aggregated_edges", gt.aggregated_edges},
                            {"aggregate_ms", gt.aggregate_ms}, {"centrality_ms", gt.centrality_ms}}));
    } else {
        const auto gt = mln::ground_truth_cc_nodes(x, y, g.threads);
        emit(g, render_set(g, "cc_nodes", gt.cc_nodes,
                           {{"dataset_id", ds.id}, {"aggregated_edges", gt.aggregated_edges},
                            {"aggregate_ms", gt.aggregate_ms}, {"centrality_ms", gt.centrality_ms}}));
    }
    return kOk;
}

struct RunArgs {
    std::vector<std::string> dirs;
    std::vector<std::string> methods;
    std::string kind = "degree";
    std::string retain;
    std::vector<std::string> fractions;
    std::optional<std::size_t> gt_cap;
    std::size_t overlap = 2;
    std::optional<std::size_t> top_k;
};

int cmd_run(const Globals& g, const RunArgs& a) {
    mln::RunConfig config;
    config.kind = mln::parse_kind(a.kind);
    config.methods = mln::parse_methods(a.methods, config.kind, parse_fractions(a.fractions));
    config.seed = g.seed.value_or(0);
    config.threads = g.threads;
    if (!a.retain.empty()) config.retain = mln::RetentionPolicy::parse(a.retain, config.seed);
    if (a.gt_cap) config.gt_cap = *a.gt_cap;
    config.cc1.overlap_threshold = a.overlap;
    config.cc2 = cc2_selection(a.top_k);

    std::vector<mln::Dataset> datasets;
    for (const auto& d : a.dirs) {
        datasets.push_back(mln::load_dataset(d));
        spdlog::info("loaded {} (n={})", datasets.back().id, datasets.back().mln.num_vertices());
    }
    const auto report = mln::run_experiment(datasets, config);

    std::ostringstream csv;
    mln::write_results_csv(csv, report.rows);
    const auto summary = mln::report_to_json(report).dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << (g.format == "json" ? summary : csv.str());
        return kOk;
    }
    // CSV rows at --out and the JSON summary next to it (or the reverse for --format json).
    std::filesystem::path primary = g.out;
    std::filesystem::path secondary = primary;
    secondary.replace_extension(g.format == "json" ? ".csv" : ".json");
    if (secondary == primary) secondary += g.format == "json" ? ".csv" : ".json";
    Globals to_primary = g, to_secondary = g;
    to_secondary.out = secondary.string();
    emit(to_primary, g.format == "json" ? summary : csv.str());
    emit(to_secondary, g.format == "json" ? csv.str() : summary);
    return kOk;
}

int cmd_report(const Globals& g, const std::vector<std::string>& csvs, const std::string& baseline,
               const std::string& plots) {
    json all = json::array();
    std::string text;
    for (const auto& path : csvs) {
        const auto rows = mln::read_results_csv(std::filesystem::path(path));
        const auto suite = std::filesystem::path(path).stem().string();
        const auto report = mln::build_suite_report(suite, rows, baseline);
        text += mln::format_suite_report(report) + "\n";
        json methods = json::array();
        for (const auto& m : report.methods) {
            methods.push_back({{"method", m.method},
                               {"rows", m.summary.rows},
                               {"mean_jaccard", m.summary.mean_jaccard},
                               {"mean_precision", m.summary.mean_precision},
                               {"mean_recall", m.summary.mean_recall},
                               {"jaccard_gain", m.jaccard_gain ? json(*m.jaccard_gain) : json(nullptr)}});
        }
        all.push_back({{"suite", suite}, {"baseline", baseline}, {"methods", methods}});
        if (!plots.empty()) mln::write_plot_series(plots, suite, rows);
    }
    emit(g, g.format == "json" ? all.dump(2) + "\n" : text);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Decoupled centrality analysis of two-layer networks"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for generation and sampled retention");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Output file or directory");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    std::string manifest;
    auto* gen = app.add_subcommand("generate", "Generate the datasets of a manifest");
    gen->add_option("--manifest", manifest, "Manifest JSON")->required();

    std::string dir, kind = "degree", retain = "none";
    auto* analyze = app.add_subcommand("analyze", "Run the per-layer analysis and write Psi artifacts");
    analyze->add_option("dataset", dir, "Dataset directory")->required();
    analyze->add_option("--kind", kind, "degree or closeness");
    analyze->add_option("--retain", retain, "none, hubs, all or fraction:<f>");

    std::string method;
    std::vector<std::string> psi, fractions;
    std::size_t overlap = 2;
    std::optional<std::size_t> top_k;
    auto* compose = app.add_subcommand("compose", "Combine two Psi artifacts");
    compose->add_option("psi", psi, "Psi artifacts of the two layers")->required()->expected(2);
    compose->add_option("--kind", kind, "degree or closeness");
    compose->add_option("--method", method, "Composition method")->required();
    compose->add_option("--info-fraction", fractions, "Retained fraction for dc-a2-info")->delimiter(',');
    compose->add_option("--overlap-threshold", overlap, "CC1 overlap threshold");
    compose->add_option("--top-k", top_k, "CC2 top-k selection");

    auto* gt = app.add_subcommand("ground-truth", "Exact hubs / CC nodes of the aggregated network");
    gt->add_option("dataset", dir, "Dataset directory")->required();
    gt->add_option("--kind", kind, "degree or closeness");

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Benchmark methods against the ground truth");
    run->add_option("datasets", run_args.dirs, "Dataset directories")->required();
    run->add_option("--methods", run_args.methods, "Comma-separated methods")->required()->delimiter(',');
    run->add_option("--kind", run_args.kind, "degree or closeness");
    run->add_option("--retain", run_args.retain, "Retention for degree methods other than dc-a2-info");
    run->add_option("--info-fraction", run_args.fractions, "Fractions for dc-a2-info")->delimiter(',');
    run->add_option("--gt-cap", run_args.gt_cap, "Skip ground truth above this many vertices");
    run->add_option("--overlap-threshold", run_args.overlap, "CC1 overlap threshold");
    run->add_option("--top-k", run_args.top_k, "CC2 top-k selection");

    std::vector<std::string> csvs;
    std::string baseline = "naive", plots;
    auto* report = app.add_subcommand("report", "Summarize results CSVs");
    report->add_option("csv", csvs, "Results files")->required();
    report->add_option("--baseline", baseline, "Method to compare against");
    report->add_option("--plots", plots, "Directory for plot-ready series");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) return cmd_generate(g, manifest);
        if (*analyze) return cmd_analyze(g, dir, kind, retain);
        if (*compose) return cmd_compose(g, kind, method, psi, fractions, overlap, top_k);
        if (*gt) return cmd_ground_truth(g, dir, kind);
        if (*run) return cmd_run(g, run_args);
        if (*report) return cmd_report(g, csvs, baseline, plots);
    } catch (const mln::UsageError& e) {
        spdlog::error("{}", e.what());
        return kUsage;
    } catch (const mln::DataError& e) {
        spdlog::error("{}", e.what());
        return kData;
    } catch (const std::filesystem::filesystem_error& e) {
        spdlog::error("{}", e.what());
        return kData;
    } catch (const nlohmann::json::exception& e) {
        spdlog::error("{}", e.what());
        return kData;
    }
    return kUsage;
}
