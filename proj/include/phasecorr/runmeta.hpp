// Run configuration files and run manifests.
//
// Config files are flat UTF-8 "key = value" text ('#' starts a comment).
// Every CLI command also writes a JSON manifest recording the resolved
// parameters, seed, tool version and output files; a manifest can be fed back
// through --config to reproduce a run byte-for-byte.

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace phasecorr {

inline constexpr const char* tool_version = "1.0.0";

/// Parse flat "key = value" text. Throws std::invalid_argument naming the
/// offending line on malformed input.
std::map<std::string, std::string> parse_flat_config(std::istream& in);

/// Load a config file; accepts either flat key=value text or a manifest JSON
/// (detected by a leading '{'), in which case the manifest's resolved params
/// become the config values.
std::map<std::string, std::string> load_config_file(const std::string& path);

struct RunManifest {
    std::string command;
    std::string version = tool_version;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> params; // resolved values, round-trip formatted
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;
};

void write_manifest(const RunManifest& manifest, const std::string& path);

} // namespace phasecorr
