#include "mln/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mln/aggregation.hpp"
#include "mln/selection.hpp"

namespace mln {
namespace {

using nlohmann::json;

const std::vector<std::string> kColumns = {
    "dataset_id", "n",         "edges_l1",        "edges_l2",     "edges_agg",  "method",
    "jaccard",    "precision", "recall",          "tp",           "fp",         "fn",
    "psi_time_layers", "psi_time_max", "theta_time", "gt_time", "speedup"};

constexpr const char* kNA = "NA";

std::string fmt_double(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string fmt_score(double v) { return fmt_double(v, "%.17g"); }
std::string fmt_ms(double v) { return fmt_double(v, "%.6f"); }

// Times are stored rounded to what the CSV carries, so the speedup column
// can be recomputed exactly from the timing columns.
double round_ms(double v) { return std::stod(fmt_ms(v)); }

std::string fraction_label(double f) {
    std::ostringstream ss;
    ss << f;
    return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

RetentionPolicy retention_for(const MethodSpec& m, const RunConfig& config) {
    if (m.degree == DegreeMethod::DcA2Info) return RetentionPolicy::sample(m.info_fraction, config.seed);
    const bool needs_hubs = m.degree == DegreeMethod::DcP1 || m.degree == DegreeMethod::DcP2;
    if (config.retain) {
        const auto k = config.retain->kind;
        if (needs_hubs && k != RetentionKind::HubsOnly && k != RetentionKind::All) {
            throw UsageError(m.label + " needs hub neighborhoods; retention '" + config.retain->to_string() +
                             "' does not keep them");
        }
        return *config.retain;
    }
    return needs_hubs ? RetentionPolicy::hubs_only() : RetentionPolicy::none();
}

DegreeCompositionResult compose_degree(const MethodSpec& m, const DegreeSummary& x, const DegreeSummary& y) {
    switch (m.degree) {
        case DegreeMethod::NaiveOr: return naive_or(x, y);
        case DegreeMethod::DcA1: return dc_a1(x, y);
        case DegreeMethod::DcA2: return dc_a2(x, y);
        case DegreeMethod::DcA2Info: return dc_a2_with_info(x, y, m.info_fraction);
        case DegreeMethod::DcP1: return dc_p1(x, y);
        case DegreeMethod::DcP2: return dc_p2(x, y);
    }
    throw UsageError("unhandled degree method");
}

ClosenessCompositionResult compose_closeness(const MethodSpec& m, const RunConfig& config, const ClosenessSummary& x,
                                             const ClosenessSummary& y) {
    switch (m.closeness) {
        case ClosenessMethod::NaiveAnd: return naive_and_cc(x, y);
        case ClosenessMethod::Cc1: return cc1(x, y, config.cc1);
        case ClosenessMethod::Cc2: return cc2(x, y, config.cc2);
    }
    throw UsageError("unhandled closeness method");
}

void run_one(const Dataset& ds, const RunConfig& config, std::vector<ResultRow>& out) {
    const auto& mln = ds.mln;
    if (mln.num_layers() != 2) throw DataError("dataset '" + ds.id + "' must have exactly two layers");
    const auto& x = mln.layer(0).graph;
    const auto& y = mln.layer(1).graph;

    ResultRow base;
    base.dataset_id = ds.id;
    base.n = mln.num_vertices();
    base.edges_l1 = x.num_edges();
    base.edges_l2 = y.num_edges();

    std::optional<VertexSet> truth;
    if (base.n <= config.gt_cap) {
        if (config.kind == AnalysisKind::Degree) {
            const auto gt = ground_truth_degree_hubs(x, y, config.threads);
            truth = gt.hubs;
            base.gt_time = round_ms(gt.total_ms());
            base.edges_agg = gt.aggregated_edges;
        } else {
            const auto gt = ground_truth_cc_nodes(x, y, config.threads);
            truth = gt.cc_nodes;
            base.gt_time = round_ms(gt.total_ms());
            base.edges_agg = gt.aggregated_edges;
        }
    }

    // One Psi pass per distinct retention policy, shared by the methods using it.
    std::vector<std::pair<RetentionPolicy, LayerAnalysis>> psi_runs;
    auto psi_for = [&](const RetentionPolicy& p) -> const LayerAnalysis& {
        for (const auto& [policy, analysis] : psi_runs) {
            if (policy == p) return analysis;
        }
        psi_runs.emplace_back(p, analyze_layers(mln, config.kind, p, config.threads));
        return psi_runs.back().second;
    };

    for (const auto& m : config.methods) {
        const auto policy = config.kind == AnalysisKind::Degree ? retention_for(m, config) : RetentionPolicy::none();
        const LayerAnalysis& psi = psi_for(policy);

        ResultRow row = base;
        row.method = m.label;
        for (double t : psi.psi_time_ms) row.psi_time_per_layer.push_back(round_ms(t));
        row.psi_time_max = *std::max_element(row.psi_time_per_layer.begin(), row.psi_time_per_layer.end());

        VertexSet estimate;
        if (config.kind == AnalysisKind::Degree) {
            const auto s = psi.degree();
            const auto r = compose_degree(m, s[0], s[1]);
            estimate = r.hubs;
            row.theta_time = round_ms(r.theta_time_ms);
        } else {
            const auto s = psi.closeness();
            const auto r = compose_closeness(m, config, s[0], s[1]);
            estimate = r.cc_nodes;
            row.theta_time = round_ms(r.theta_time_ms);
        }
        if (truth) row.scores = compare_sets(estimate, *truth);
        out.push_back(std::move(row));
    }
}

std::size_t parse_size(const std::string& s, const std::string& where) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw DataError(where + ": bad integer '" + s + "'");
    return v;
}

double parse_real(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw DataError(where + ": bad number '" + s + "'");
    }
}

}  // namespace

AnalysisKind parse_kind(const std::string& text) {
    if (text == "degree") return AnalysisKind::Degree;
    if (text == "closeness") return AnalysisKind::Closeness;
    throw UsageError("unknown kind '" + text + "' (expected degree or closeness)");
}

std::vector<MethodSpec> parse_methods(const std::vector<std::string>& names, AnalysisKind kind,
                                      const std::vector<double>& info_fractions) {
    static const std::vector<std::pair<std::string, DegreeMethod>> degree = {
        {"naive", DegreeMethod::NaiveOr}, {"dc-a1", DegreeMethod::DcA1},           {"dc-a2", DegreeMethod::DcA2},
        {"dc-a2-info", DegreeMethod::DcA2Info}, {"dc-p1", DegreeMethod::DcP1},     {"dc-p2", DegreeMethod::DcP2}};
    static const std::vector<std::pair<std::string, ClosenessMethod>> closeness = {
        {"naive", ClosenessMethod::NaiveAnd}, {"cc1", ClosenessMethod::Cc1}, {"cc2", ClosenessMethod::Cc2}};

    if (names.empty()) throw UsageError("no methods requested");
    std::vector<MethodSpec> out;
    for (const auto& name : names) {
        const auto d = std::find_if(degree.begin(), degree.end(), [&](const auto& p) { return p.first == name; });
        const auto c =
            std::find_if(closeness.begin(), closeness.end(), [&](const auto& p) { return p.first == name; });
        if (d == degree.end() && c == closeness.end()) throw UsageError("unknown method '" + name + "'");

        MethodSpec m;
        m.kind = kind;
        m.label = name;
        if (kind == AnalysisKind::Degree) {
            if (d == degree.end()) throw UsageError("method '" + name + "' is not a degree method");
            m.degree = d->second;
            if (m.degree == DegreeMethod::DcA2Info) {
                if (info_fractions.empty()) throw UsageError("dc-a2-info needs at least one info fraction");
                for (double f : info_fractions) {
                    if (!(f >= 0.0 && f <= 1.0)) throw UsageError("info fraction must lie in [0, 1]");
                    m.info_fraction = f;
                    m.label = name + "@" + fraction_label(f);
                    out.push_back(m);
                }
                continue;
            }
        } else {
            if (c == closeness.end()) throw UsageError("method '" + name + "' is not a closeness method");
            m.closeness = c->second;
        }
        out.push_back(m);
    }
    return out;
}

std::optional<double> ResultRow::speedup() const {
    if (!gt_time) return std::nullopt;
    const double decoupled = psi_time_max + theta_time;
    if (decoupled <= 0.0) return std::nullopt;
    return *gt_time / decoupled;
}

EvaluationReport run_experiment(const std::vector<Dataset>& datasets, const RunConfig& config) {
    if (config.methods.empty()) throw UsageError("no methods requested");
    std::vector<const Dataset*> order;
    for (const auto& d : datasets) order.push_back(&d);
    std::stable_sort(order.begin(), order.end(), [](const Dataset* a, const Dataset* b) { return a->id < b->id; });

    EvaluationReport report;
    for (const Dataset* d : order) {
        try {
            run_one(*d, config, report.rows);
        } catch (const DataError& e) {
            throw DataError("dataset '" + d->id + "': " + e.what());
        }
    }
    report.per_method = summarize_by_method(report.rows);
    return report;
}

std::map<std::string, SuiteSummary> summarize_by_method(const std::vector<ResultRow>& rows) {
    std::map<std::string, std::vector<SetComparison>> grouped;
    for (const auto& r : rows) {
        if (r.scores) grouped[r.method].push_back(*r.scores);
    }
    std::map<std::string, SuiteSummary> out;
    for (const auto& [method, list] : grouped) out[method] = summarize(list);
    return out;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "# schema: " << kResultsSchema << "\n";
    for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
    out << "\n";
    for (const auto& r : rows) {
        if (r.dataset_id.find_first_of(",\n") != std::string::npos || r.method.find_first_of(",\n") != std::string::npos) {
            throw DataError("dataset ids and method labels may not contain commas or newlines");
        }
        std::string layers;
        for (std::size_t i = 0; i < r.psi_time_per_layer.size(); ++i) {
            layers += (i ? ";" : "") + fmt_ms(r.psi_time_per_layer[i]);
        }
        out << r.dataset_id << ',' << r.n << ',' << r.edges_l1 << ',' << r.edges_l2 << ','
            << (r.edges_agg ? std::to_string(*r.edges_agg) : kNA) << ',' << r.method << ',';
        if (r.scores) {
            out << fmt_score(r.scores->jaccard) << ',' << fmt_score(r.scores->precision) << ','
                << fmt_score(r.scores->recall) << ',' << r.scores->tp << ',' << r.scores->fp << ',' << r.scores->fn;
        } else {
            out << kNA << ',' << kNA << ',' << kNA << ',' << kNA << ',' << kNA << ',' << kNA;
        }
        const auto sp = r.speedup();
        out << ',' << layers << ',' << fmt_ms(r.psi_time_max) << ',' << fmt_ms(r.theta_time) << ','
            << (r.gt_time ? fmt_ms(*r.gt_time) : kNA) << ',' << (sp ? fmt_score(*sp) : kNA) << "\n";
    }
}

std::vector<ResultRow> read_results_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line) || line != std::string("# schema: ") + kResultsSchema) {
        throw DataError(source + ": not a " + std::string(kResultsSchema) + " results file");
    }
    if (!std::getline(in, line) || split(line, ',') != kColumns) {
        throw DataError(source + ": column header does not match " + std::string(kResultsSchema));
    }
    std::vector<ResultRow> rows;
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto where = source + ":" + std::to_string(lineno);
        const auto f = split(line, ',');
        if (f.size() != kColumns.size()) throw DataError(where + ": expected " + std::to_string(kColumns.size()) + " fields");
        ResultRow r;
        r.dataset_id = f[0];
        r.n = parse_size(f[1], where);
        r.edges_l1 = parse_size(f[2], where);
        r.edges_l2 = parse_size(f[3], where);
        if (f[4] != kNA) r.edges_agg = parse_size(f[4], where);
        r.method = f[5];
        if (f[6] != kNA) {
            SetComparison s;
            s.jaccard = parse_real(f[6], where);
            s.precision = parse_real(f[7], where);
            s.recall = parse_real(f[8], where);
            s.tp = parse_size(f[9], where);
            s.fp = parse_size(f[10], where);
            s.fn = parse_size(f[11], where);
            r.scores = s;
        }
        if (!f[12].empty()) {
            for (const auto& t : split(f[12], ';')) r.psi_time_per_layer.push_back(parse_real(t, where));
        }
        r.psi_time_max = parse_real(f[13], where);
        r.theta_time = parse_real(f[14], where);
        if (f[15] != kNA) r.gt_time = parse_real(f[15], where);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_results_csv(in, path.string());
}

json report_to_json(const EvaluationReport& report) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        json j = {{"dataset_id", r.dataset_id}, {"n", r.n},        {"edges_l1", r.edges_l1},
                  {"edges_l2", r.edges_l2},     {"method", r.method}, {"psi_time_per_layer", r.psi_time_per_layer},
                  {"psi_time_max", r.psi_time_max}, {"theta_time", r.theta_time}};
        j["edges_agg"] = r.edges_agg ? json(*r.edges_agg) : json(nullptr);
        j["gt_time"] = r.gt_time ? json(*r.gt_time) : json(nullptr);
        const auto sp = r.speedup();
        j["speedup"] = sp ? json(*sp) : json(nullptr);
        if (r.scores) {
            j["jaccard"] = r.scores->jaccard;
            j["precision"] = r.scores->precision;
            j["recall"] = r.scores->recall;
            j["tp"] = r.scores->tp;
            j["fp"] = r.scores->fp;
            j["fn"] = r.scores->fn;
        } else {
            j["jaccard"] = j["precision"] = j["recall"] = nullptr;
        }
        rows.push_back(std::move(j));
    }
    json summary = json::object();
    for (const auto& [method, s] : report.per_method) {
        summary[method] = {{"rows", s.rows},
                           {"mean_jaccard", s.mean_jaccard},
                           {"mean_precision", s.mean_precision},
                           {"mean_recall", s.mean_recall}};
    }
    return {{"schema", kResultsSchema}, {"rows", rows}, {"summary", summary}};
}

SuiteReport build_suite_report(const std::string& suite, const std::vector<ResultRow>& rows,
                               const std::string& baseline) {
    SuiteReport report;
    report.suite = suite;
    report.baseline = baseline;

    std::vector<std::string> order;
    std::map<std::string, std::map<std::string, double>> jaccard;  // method -> dataset -> score
    std::map<std::string, std::vector<SetComparison>> scores;
    for (const auto& r : rows) {
        if (std::find(order.begin(), order.end(), r.method) == order.end()) order.push_back(r.method);
        if (!r.scores) continue;
        scores[r.method].push_back(*r.scores);
        jaccard[r.method][r.dataset_id] = r.scores->jaccard;
    }
    if (std::find(order.begin(), order.end(), baseline) == order.end()) {
        throw DataError(suite + ": baseline method '" + baseline + "' does not occur");
    }

    const auto& base = jaccard[baseline];
    for (const auto& method : order) {
        MethodGain g;
        g.method = method;
        if (scores.contains(method)) g.summary = summarize(scores[method]);
        std::vector<double> h, b;
        for (const auto& [dataset, value] : jaccard[method]) {
            const auto it = base.find(dataset);
            if (it == base.end()) continue;
            h.push_back(value);
            b.push_back(it->second);
        }
        g.jaccard_gain = relative_gain(h, b);
        report.methods.push_back(std::move(g));
    }
    return report;
}

std::string format_suite_report(const SuiteReport& report) {
    std::ostringstream out;
    out << "suite: " << report.suite << "  (gain = mean per-dataset jaccard change vs " << report.baseline << ")\n";
    out << std::left << std::setw(20) << "method" << std::right << std::setw(6) << "rows" << std::setw(12)
        << "jaccard" << std::setw(12) << "precision" << std::setw(12) << "recall" << std::setw(12) << "gain"
        << "\n";
    for (const auto& m : report.methods) {
        out << std::left << std::setw(20) << m.method << std::right << std::setw(6) << m.summary.rows;
        if (m.summary.rows == 0) {
            out << std::setw(12) << kNA << std::setw(12) << kNA << std::setw(12) << kNA;
        } else {
            out << std::fixed << std::setprecision(2) << std::setw(11) << 100.0 * m.summary.mean_jaccard << '%'
                << std::setw(11) << 100.0 * m.summary.mean_precision << '%' << std::setw(11)
                << 100.0 * m.summary.mean_recall << '%';
        }
        if (m.method == report.baseline || !m.jaccard_gain) {
            out << std::setw(12) << "-";
        } else {
            out << std::showpos << std::fixed << std::setprecision(2) << std::setw(11) << 100.0 * *m.jaccard_gain
                << '%' << std::noshowpos;
        }
        out << "\n";
    }
    return out.str();
}

void write_plot_series(const std::filesystem::path& dir, const std::string& suite, const std::vector<ResultRow>& rows) {
    std::vector<std::string> methods, datasets;
    std::map<std::pair<std::string, std::string>, const ResultRow*> cell;
    for (const auto& r : rows) {
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
        if (std::find(datasets.begin(), datasets.end(), r.dataset_id) == datasets.end()) datasets.push_back(r.dataset_id);
        cell[{r.dataset_id, r.method}] = &r;
    }
    std::filesystem::create_directories(dir);

    std::ofstream acc(dir / (suite + ".jaccard.tsv"));
    std::ofstream tim(dir / (suite + ".timing.tsv"));
    if (!acc || !tim) throw DataError("cannot write plot series under " + dir.string());
    acc << "dataset_id";
    tim << "# times in ms; plot on a log scale\ndataset_id\tgt_time";
    for (const auto& m : methods) {
        acc << '\t' << m;
        tim << '\t' << m;
    }
    acc << "\n";
    tim << "\n";
    for (const auto& d : datasets) {
        acc << d;
        tim << d;
        std::optional<double> gt;
        for (const auto& m : methods) {
            const auto it = cell.find({d, m});
            if (it != cell.end() && it->second->gt_time) gt = it->second->gt_time;
        }
        tim << '\t' << (gt ? fmt_ms(*gt) : kNA);
        for (const auto& m : methods) {
            const auto it = cell.find({d, m});
            const ResultRow* r = it == cell.end() ? nullptr : it->second;
            acc << '\t' << (r && r->scores ? fmt_score(r->scores->jaccard) : kNA);
            tim << '\t' << (r ? fmt_ms(r->psi_time_max + r->theta_time) : kNA);
        }
        acc << "\n";
        tim << "\n";
    }
}

}  // namespace mln
