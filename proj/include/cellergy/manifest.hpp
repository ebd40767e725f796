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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cellergy {

/// FNV-1a 64-bit digest of a byte string, as 16 hex characters.
std::string fnv1a64_hex(const std::string& bytes);

/// Digest of a file's bytes; throws ConfigError when unreadable.
std::string file_digest(const std::string& path);

/// Every CLI run emits one manifest describing the command, the exact
/// configuration snapshot, the seed, and a digest per emitted file.
/// wall_clock_utc and elapsed_s are the only fields that vary between
/// identical reruns; the digests never do.
struct RunManifest {
    std::string command;
    std::uint64_t master_seed = 0;
    std::string tool_version;
    std::string wall_clock_utc;
    double elapsed_s = 0.0;
    std::vector<std::pair<std::string, std::string>> output_digests; // (file, digest)
};

nlohmann::json manifest_json(const RunManifest& manifest,
                             const nlohmann::json& config_snapshot);

} // namespace cellergy
