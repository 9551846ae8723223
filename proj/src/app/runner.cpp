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

#include "gprc/app/runner.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>

#include "gprc/app/output.hpp"
#include "gprc/errors.hpp"

namespace gprc {

namespace fs = std::filesystem;

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot write " + path.string());
    return os;
}

template<typename Writer>
void write_file(const fs::path& path, Writer&& w) {
    std::ofstream os = open_output(path);
    w(os);
    os.flush();
    if (!os) throw ConfigError("write failed for " + path.string());
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
}

} // namespace

int report_exception(std::ostream& err) {
    try {
        throw;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const SimulationAbort& e) {
        err << "simulation aborted: " << e.what() << '\n';
        return kExitSimulation;
    } catch (const GpFitError& e) {
        err << "simulation aborted: " << e.what() << '\n';
        return kExitSimulation;
    } catch (const DesignError& e) {
        err << "design failure: " << e.what() << '\n';
        return kExitDesign;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitSimulation;
    }
}

ScenarioResult simulate_to_directory(const LoadedConfig& cfg, const fs::path& dir) {
    ensure_directory(dir);
    ScenarioResult r = run_scenario(cfg.config);
    const std::string sum = checksum_hex(cfg.checksum);
    write_file(dir / "timeseries.csv", [&](std::ostream& os) { write_timeseries(os, r, sum); });
    write_file(dir / "metrics.csv", [&](std::ostream& os) { write_metrics(os, r, sum); });
    write_file(dir / "gp_models.csv", [&](std::ostream& os) { write_gp_models(os, r, sum); });
    write_file(dir / "kernel_profile.csv",
               [&](std::ostream& os) { write_kernel_profile(os, kernel_profile(cfg.config.spatial.kernel), sum); });
    write_file(dir / "manifest.txt", [&](std::ostream& os) { write_manifest(os, cfg, *r.design, utc_timestamp()); });
    return r;
}

int run_simulate(const std::vector<fs::path>& configs, const fs::path& out, std::optional<RcVariant> variant, int jobs,
                 std::ostream& err) {
    std::mutex err_mutex;
    auto one = [&](const fs::path& config, const fs::path& dir) {
        try {
            LoadedConfig cfg = load_config(config);
            if (variant) {
                cfg.config.variant = *variant;
                cfg.canonical = canonical_config(cfg.config);
                cfg.checksum = fnv1a64(cfg.canonical);
            }
            simulate_to_directory(cfg, dir);
            return static_cast<int>(kExitOk);
        } catch (...) {
            std::lock_guard lock(err_mutex);
            err << config.string() << ": ";
            return report_exception(err);
        }
    };

    if (configs.size() == 1) return one(configs.front(), out);

    int worst = kExitOk;
    const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
    for (std::size_t i = 0; i < configs.size(); i += width) {
        std::vector<std::future<int>> batch;
        for (std::size_t j = i; j < std::min(configs.size(), i + width); ++j)
            batch.push_back(std::async(std::launch::async, one, configs[j], out / configs[j].stem()));
        for (auto& f : batch) worst = std::max(worst, f.get());
    }
    return worst;
}

int run_kernel_profile(const fs::path& config, const fs::path& out, std::ostream& err) {
    try {
        const LoadedConfig cfg = load_config(config);
        if (out.has_parent_path()) ensure_directory(out.parent_path());
        write_file(out, [&](std::ostream& os) {
            write_kernel_profile(os, kernel_profile(cfg.config.spatial.kernel), checksum_hex(cfg.checksum));
        });
        return kExitOk;
    } catch (...) {
        return report_exception(err);
    }
}

int run_design_report(const fs::path& config, std::ostream& out, std::ostream& err) {
    try {
        const LoadedConfig cfg = load_config(config);
        const ScenarioDesign d = design_scenario(cfg.config);
        out << "config_checksum = " << checksum_hex(cfg.checksum) << '\n';
        write_design_report(out, cfg.config, d);
        return kExitOk;
    } catch (...) {
        return report_exception(err);
    }
}

} // namespace gprc
