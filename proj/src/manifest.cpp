#include "pwrctv/manifest.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "pwrctv/errors.hpp"

namespace pwrctv {

using nlohmann::json;

std::string RunManifest::to_json() const {
    json j;
    j["command"] = command;
    try {
        j["config"] = json::parse(config_json);
    } catch (const json::parse_error&) {
        j["config"] = config_json;
    }
    j["inputs"] = json::array();
    for (const auto& [path, digest] : inputs) {
        j["inputs"].push_back({{"path", path}, {"digest", digest}});
    }
    j["outputs"] = outputs;
    j["wall_seconds"] = wall_seconds;
    j["status"] = status;
    return j.dump(2);
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file for digest: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize k = 0; k < n; ++k) {
            h ^= static_cast<unsigned char>(buf[k]);
            h *= 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw InputError("cannot create file: " + tmp);
        out << content;
        if (!out) throw InputError("short write: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace pwrctv
