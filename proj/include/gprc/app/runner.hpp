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
#include <optional>
#include <ostream>
#include <vector>

#include "gprc/app/config.hpp"

namespace gprc {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitSimulation = 2,
    kExitDesign = 3,
};

/// Maps the exception currently being handled to an exit code and prints
/// a one-line diagnostic to err.
int report_exception(std::ostream& err);

/// Runs one scenario and writes timeseries.csv, metrics.csv,
/// gp_models.csv, kernel_profile.csv and manifest.txt into dir.
/// Throws on failure.
ScenarioResult simulate_to_directory(const LoadedConfig& cfg, const std::filesystem::path& dir);

/// `simulate`. With several configs each writes into out/<config stem>,
/// running up to jobs scenarios concurrently. Returns the worst exit code.
int run_simulate(const std::vector<std::filesystem::path>& configs, const std::filesystem::path& out,
                 std::optional<RcVariant> variant, int jobs, std::ostream& err);

/// `kernel-profile`: kernel values over +-2 periods of lag.
int run_kernel_profile(const std::filesystem::path& config, const std::filesystem::path& out, std::ostream& err);

/// `design-report`: margins, previews and controller coefficients.
int run_design_report(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

} // namespace gprc
