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

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gprc/app/config.hpp"
#include "gprc/gp.hpp"
#include "gprc/sim/scenario.hpp"

namespace gprc {

inline constexpr const char* kToolVersion = "0.3.0";

/// Kernel value over lags in [-periods_each_side, +periods_each_side]
/// times the period. Lags are period * (i / points_per_period), so whole
/// and half periods land exactly on the grid.
std::vector<std::pair<double, double>> kernel_profile(const KernelHyperd& hyper, int periods_each_side = 2,
                                                      int points_per_period = 200);

// Data files start with "# config_checksum=<hex>" followed by a CSV header.
// Numbers are written with 17 significant digits.
void write_timeseries(std::ostream& os, const ScenarioResult& r, const std::string& checksum);
void write_metrics(std::ostream& os, const ScenarioResult& r, const std::string& checksum);
void write_gp_models(std::ostream& os, const ScenarioResult& r, const std::string& checksum);
void write_kernel_profile(std::ostream& os, const std::vector<std::pair<double, double>>& profile,
                          const std::string& checksum);

/// Human-readable design summary: controller, margins, learning filters.
void write_design_report(std::ostream& os, const ScenarioConfig& cfg, const ScenarioDesign& design);

/// key = value manifest: tool version, checksum, timestamp, resolved config
/// and design summary.
void write_manifest(std::ostream& os, const LoadedConfig& cfg, const ScenarioDesign& design, const std::string& timestamp);

} // namespace gprc
