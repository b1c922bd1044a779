#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pwrctv {

// One manifest per CLI run: command, fully resolved configuration, input
// digests, output paths, timing, and termination status. Written atomically.
struct RunManifest {
    std::string command;
    std::string config_json;   // resolved configuration, serialized JSON object
    std::vector<std::pair<std::string, std::string>> inputs; // path, digest
    std::vector<std::string> outputs;
    double wall_seconds = 0.0;
    std::string status = "ok";

    std::string to_json() const;
};

// FNV-1a 64-bit digest of a file's bytes, hex encoded.
std::string file_digest(const std::string& path);

// Write-to-temp-then-rename so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace pwrctv
