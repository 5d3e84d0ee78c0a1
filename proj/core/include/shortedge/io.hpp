#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "shortedge/constants.hpp"
#include "shortedge/drawing.hpp"
#include "shortedge/oracle.hpp"
#include "shortedge/packing_matcher.hpp"
#include "shortedge/set_system.hpp"
#include "shortedge/short_edge.hpp"

// JSON and CSV encodings. Every reader rejects unknown fields and throws
// ParseError with the offending path.
namespace shortedge::io {

using nlohmann::json;

// {"vertices": [{"id", "x", "y"}], "edges": [{"u", "v", "polyline"?}],
// "outer_vertex"?}. Writers add a "format" tag; readers accept it.
json to_json(const Drawing& drawing, std::optional<std::int64_t> outer_vertex = {});

struct DrawingFile {
  Drawing drawing;
  std::optional<std::int64_t> outer_vertex;
};
DrawingFile drawing_from_json(const json& j);

// {"n", "members": [{"key": [i, j], "set": [...], "logw"}]}
json to_json(const SetFamily& family);
SetFamily family_from_json(const json& j);

// {"pairs": [[i, j]...], "X": [...], "kappa": {"i,j": k}, "config": {...}}
// plus bookkeeping fields.
json to_json(const LowStabMatching& matching);
LowStabMatching matching_from_json(const json& j);

json to_json(const MatchingReport& report);
json to_json(const PipelineReport& report);
json to_json(const oracle::OracleReport& report);

json to_json(const Constants& constants);
Constants constants_from_json(const json& j);

// Reads a whole file as JSON.
json read_json(const std::filesystem::path& path);
// Writes with two-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const json& j);

Constants load_constants(const std::filesystem::path& path);

// Versioned flat table of pipeline runs.
inline constexpr const char* kCsvSchema = "# csv-schema: short-edge/1";
std::string csv_header();
std::string csv_row(const PipelineReport& report, std::uint64_t seed,
                    const std::string& generator);

}  // namespace shortedge::io
