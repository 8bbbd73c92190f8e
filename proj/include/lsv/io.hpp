#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace lsv {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "lsvresp";
inline constexpr const char* kToolVersion = "0.1.0";

/// Writes to `<path>.tmp.<pid>` and renames over `path`.
void atomic_write(const std::string& path, const std::string& content);

/// Shortest round-trip decimal form.
std::string fmt(double v);

/// CSV with a '#'-prefixed metadata preamble: tool/version line, then one line per top-level
/// key of `meta` as compact JSON.
std::string render_csv(const json& meta, const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

/// Header block embedded in every output: tool, version, config, seed.
json provenance(const json& config, std::uint64_t seed);

}  // namespace lsv
