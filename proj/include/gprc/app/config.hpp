/*
 * Copyright 2026 The gprc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gprc/sim/scenario.hpp"

namespace gprc {

/**
 * Scenario configuration parsed from flat "section.key = value" text.
 *
 * '#' starts a comment. Numbers accept a trailing "pi" factor ("2*pi",
 * "2pi", "pi"). Lists are comma separated; a harmonic is
 * "amplitude:frequency[:phase]" and a velocity segment
 * "duration:v_start:v_end".
 */
struct LoadedConfig {
    ScenarioConfig config;
    /// Keys that took their documented default.
    std::vector<std::string> defaulted;
    /// Canonical "key = value" listing of every resolved setting.
    std::string canonical;
    std::uint64_t checksum = 0;
};

/// Every recognized key, in canonical order.
const std::vector<std::string>& config_keys();

/// Throws ConfigError listing unknown keys, or naming the field that
/// failed to parse or validate.
LoadedConfig parse_config(const std::string& text);
LoadedConfig load_config(const std::filesystem::path& path);

/// Canonical listing of cfg; the checksum is computed over this text.
std::string canonical_config(const ScenarioConfig& cfg);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);
std::string checksum_hex(std::uint64_t checksum);

RcVariant parse_variant(const std::string& s);

} // namespace gprc
