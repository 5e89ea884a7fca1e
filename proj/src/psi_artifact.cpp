#include "mln/psi_artifact.hpp"

#include <fstream>

namespace mln {
namespace {

using nlohmann::json;

json neighborhoods_to_json(const NeighborhoodMap& m) {
    return {{"keys", m.keys()}, {"offsets", m.offsets()}, {"neighbors", m.neighbors()}};
}

NeighborhoodMap neighborhoods_from_json(const json& j) {
    return NeighborhoodMap::from_parts(j.at("keys").get<std::vector<VertexId>>(),
                                       j.at("offsets").get<std::vector<std::uint64_t>>(),
                                       j.at("neighbors").get<std::vector<VertexId>>());
}

json header(const char* kind, const std::string& name, std::size_t n, double psi_time_ms) {
    return {{"format", "mln-psi"}, {"version", kPsiArtifactVersion}, {"kind", kind},
            {"layer_name", name},  {"n", n},                         {"psi_time_ms", psi_time_ms}};
}

void check_vertices(const VertexSet& set, std::size_t n, const char* what) {
    for (VertexId v : set) {
        if (v >= n) throw DataError(std::string("psi artifact: ") + what + " contains vertex >= n");
    }
}

}  // namespace

json to_json(const DegreeSummary& s, const PsiWriteOptions& opts) {
    json j = header("degree", s.layer_name, s.n, s.psi_time_ms);
    j["retention"] = {{"policy", s.retention.to_string()}, {"fraction", s.retention.fraction},
                      {"seed", s.retention.seed}};
    j["degree_sum"] = s.degree_sum;
    if (opts.include_degrees) j["deg"] = s.deg;
    j["hubs"] = s.hubs;
    if (s.hub_neighborhoods) j["hub_neighborhoods"] = neighborhoods_to_json(*s.hub_neighborhoods);
    if (s.full_neighborhoods) j["full_neighborhoods"] = neighborhoods_to_json(*s.full_neighborhoods);
    return j;
}

json to_json(const ClosenessSummary& s, const PsiWriteOptions& opts) {
    json j = header("closeness", s.layer_name, s.n, s.psi_time_ms);
    if (opts.include_degrees) j["deg"] = s.deg;
    j["sum_dist"] = s.sum_dist;
    j["cc_value"] = s.cc_value;
    j["component_size"] = s.component_size;
    j["cc_nodes"] = s.cc_nodes;
    if (s.cc_neighborhoods) j["cc_neighborhoods"] = neighborhoods_to_json(*s.cc_neighborhoods);
    return j;
}

LayerSummary summary_from_json(const json& j) {
    try {
        if (j.value("format", "") != "mln-psi") throw DataError("not a psi artifact");
        if (j.at("version").get<int>() != kPsiArtifactVersion) {
            throw DataError("unsupported psi artifact version " + j.at("version").dump());
        }
        const auto kind = j.at("kind").get<std::string>();
        const auto n = j.at("n").get<std::size_t>();
        auto sized = [&](const char* key, auto& vec) {
            if (!j.contains(key)) return;
            j.at(key).get_to(vec);
            if (vec.size() != n) throw DataError(std::string("psi artifact: '") + key + "' has wrong length");
        };

        if (kind == "degree") {
            DegreeSummary s;
            s.layer_name = j.at("layer_name").get<std::string>();
            s.n = n;
            s.psi_time_ms = j.value("psi_time_ms", 0.0);
            const auto& r = j.at("retention");
            s.retention = RetentionPolicy::parse(r.at("policy").get<std::string>(), r.at("seed").get<std::uint64_t>());
            if (s.retention.kind == RetentionKind::Fraction) {
                s.retention = RetentionPolicy::sample(r.at("fraction").get<double>(), s.retention.seed);
            }
            s.degree_sum = j.at("degree_sum").get<std::uint64_t>();
            sized("deg", s.deg);
            j.at("hubs").get_to(s.hubs);
            check_vertices(s.hubs, n, "hubs");
            if (j.contains("hub_neighborhoods")) s.hub_neighborhoods = neighborhoods_from_json(j["hub_neighborhoods"]);
            if (j.contains("full_neighborhoods")) s.full_neighborhoods = neighborhoods_from_json(j["full_neighborhoods"]);
            return s;
        }
        if (kind == "closeness") {
            ClosenessSummary s;
            s.layer_name = j.at("layer_name").get<std::string>();
            s.n = n;
            s.psi_time_ms = j.value("psi_time_ms", 0.0);
            sized("deg", s.deg);
            sized("sum_dist", s.sum_dist);
            sized("cc_value", s.cc_value);
            sized("component_size", s.component_size);
            j.at("cc_nodes").get_to(s.cc_nodes);
            check_vertices(s.cc_nodes, n, "cc_nodes");
            if (j.contains("cc_neighborhoods")) s.cc_neighborhoods = neighborhoods_from_json(j["cc_neighborhoods"]);
            return s;
        }
        throw DataError("unknown psi artifact kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw DataError(std::string("psi artifact: ") + e.what());
    } catch (const UsageError& e) {
        throw DataError(std::string("psi artifact: ") + e.what());
    }
}

void write_psi_artifact(const std::filesystem::path& path, const LayerSummary& s, const PsiWriteOptions& opts) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    std::visit([&](const auto& summary) { out << to_json(summary, opts).dump() << '\n'; }, s);
    if (!out) throw DataError("write failed for " + path.string());
}

LayerSummary read_psi_artifact(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return summary_from_json(j);
}

}  // namespace mln
