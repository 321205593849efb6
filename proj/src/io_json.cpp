#include "ptopo/io_json.hpp"

#include <fstream>
#include <sstream>

namespace ptopo {

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail_input(std::string("JSON parse error: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_input("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail_input("cannot write file: " + path);
    out << content;
}

std::string content_digest(const std::string& content) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["inputs"] = input_digests;
    j["parameters"] = parameters;
    j["timing_ms"] = timing_ms;
    j["version"] = "0.1.0";
    return j.dump(2);
}

} // namespace ptopo
