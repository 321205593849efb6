#pragma once

#include "ptopo/rational.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace ptopo {

/// Parse with input-error reporting (line/column from the json parser).
nlohmann::json parse_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit content digest, hex encoded.
std::string content_digest(const std::string& content);

/// Run manifest written next to every CLI artifact.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> input_digests;
    std::map<std::string, std::string> parameters;
    double timing_ms = 0;
    std::string to_json() const;
};

} // namespace ptopo
