#include "phasecorr/runmeta.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "phasecorr/csv.hpp"

namespace phasecorr {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

std::map<std::string, std::string> parse_flat_config(std::istream& in) {
    std::map<std::string, std::string> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        values[key] = value;
    }
    return values;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        // Manifest rerun: pull the resolved params back out.
        const nlohmann::json doc = nlohmann::json::parse(text);
        if (!doc.contains("params") || !doc["params"].is_object())
            throw std::invalid_argument("manifest config " + path + ": missing params object");
        std::map<std::string, std::string> values;
        for (const auto& [key, val] : doc["params"].items()) {
            if (val.is_string())
                values[key] = val.get<std::string>();
            else if (val.is_boolean())
                values[key] = val.get<bool>() ? "true" : "false";
            else if (val.is_number_unsigned())
                values[key] = std::to_string(val.get<std::uint64_t>());
            else if (val.is_number_integer())
                values[key] = std::to_string(val.get<std::int64_t>());
            else if (val.is_number_float())
                values[key] = format_double(val.get<double>());
            else
                throw std::invalid_argument("manifest config " + path + ": key '" + key +
                                            "' has unsupported type");
        }
        return values;
    }

    std::istringstream flat(text);
    return parse_flat_config(flat);
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    nlohmann::json doc;
    doc["command"] = manifest.command;
    doc["version"] = manifest.version;
    doc["seed"] = manifest.seed;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [key, val] : manifest.params) params[key] = val;
    doc["params"] = params;
    doc["outputs"] = manifest.outputs;
    doc["duration_seconds"] = manifest.duration_seconds;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open manifest file: " + path);
    out << doc.dump(2) << '\n';
}

} // namespace phasecorr
