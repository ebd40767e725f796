/*
   Copyright 2026 the cellergy authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "cellergy/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cellergy/types.hpp"

namespace cellergy {

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
    return out;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("file_digest: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return fnv1a64_hex(buffer.str());
}

nlohmann::json manifest_json(const RunManifest& manifest,
                             const nlohmann::json& config_snapshot) {
    nlohmann::json j;
    j["command"] = manifest.command;
    j["config"] = config_snapshot;
    j["master_seed"] = manifest.master_seed;
    j["tool_version"] = manifest.tool_version;
    j["wall_clock_utc"] = manifest.wall_clock_utc;
    j["elapsed_s"] = manifest.elapsed_s;
    auto outputs = nlohmann::json::array();
    for (const auto& [file, digest] : manifest.output_digests) {
        outputs.push_back({{"file", file}, {"digest", digest}});
    }
    j["outputs"] = outputs;
    return j;
}

} // namespace cellergy
