#pragma once

#include <filesystem>

#include <json.hpp>

#include "mln/layer_analysis.hpp"

namespace mln {

// Persisted layer summaries, so composition can run in a separate invocation.
// JSON object tagged {"format": "mln-psi", "version": 1, "kind": ...}.

inline constexpr int kPsiArtifactVersion = 1;

struct PsiWriteOptions {
    bool include_degrees = true;
};

nlohmann::json to_json(const DegreeSummary& s, const PsiWriteOptions& opts = {});
nlohmann::json to_json(const ClosenessSummary& s, const PsiWriteOptions& opts = {});

/// Throws DataError on a wrong format tag, unsupported version, or
/// inconsistent fields.
LayerSummary summary_from_json(const nlohmann::json& j);

void write_psi_artifact(const std::filesystem::path& path, const LayerSummary& s, const PsiWriteOptions& opts = {});
LayerSummary read_psi_artifact(const std::filesystem::path& path);

}  // namespace mln
