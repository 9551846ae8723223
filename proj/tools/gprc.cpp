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

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "gprc/app/output.hpp"
#include "gprc/app/runner.hpp"
#include "gprc/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spatial repetitive control with a Gaussian-process memory loop"};
    app.set_version_flag("--version", std::string(gprc::kToolVersion));
    app.require_subcommand(1);

    std::vector<std::string> sim_configs;
    std::string sim_out, sim_variant;
    int jobs = 1;
    auto* sim = app.add_subcommand("simulate", "Run a closed-loop scenario and write timeseries, metrics and manifest");
    sim->add_option("--config", sim_configs, "Scenario config file (repeat for a sweep)")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", sim_out, "Output directory")->required();
    sim->add_option("--variant", sim_variant, "Override rc.variant")
        ->check(CLI::IsMember({"none", "traditional", "spatial", "both"}));
    sim->add_option("--jobs", jobs, "Concurrent scenarios in a sweep")->check(CLI::PositiveNumber);

    std::string kp_config, kp_out;
    auto* kp = app.add_subcommand("kernel-profile", "Write the periodic kernel over +-2 periods of lag");
    kp->add_option("--config", kp_config, "Scenario config file")->required()->check(CLI::ExistingFile);
    kp->add_option("--out", kp_out, "Output CSV file")->required();

    std::string dr_config;
    auto* dr = app.add_subcommand("design-report", "Print controller margins, learning-filter previews and coefficients");
    dr->add_option("--config", dr_config, "Scenario config file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : gprc::kExitConfig;
    }

    if (*sim) {
        std::vector<std::filesystem::path> paths(sim_configs.begin(), sim_configs.end());
        std::optional<gprc::RcVariant> v;
        if (!sim_variant.empty()) v = gprc::parse_variant(sim_variant);
        return gprc::run_simulate(paths, sim_out, v, jobs, std::cerr);
    }
    if (*kp) return gprc::run_kernel_profile(kp_config, kp_out, std::cerr);
    return gprc::run_design_report(dr_config, std::cout, std::cerr);
}
