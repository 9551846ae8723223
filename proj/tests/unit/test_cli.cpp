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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCli = GPRC_CLI_PATH;
const std::string kConfigs = GPRC_CONFIG_DIR;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::vector<std::vector<std::string>> rows(const fs::path& csv) {
    std::ifstream is(csv);
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        out.push_back(cells);
    }
    return out;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("gprc_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream os(p);
    os << text;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate writes both error columns and ten periods per variant") {
    const fs::path out = scratch("both");
    REQUIRE(run("simulate --config " + kConfigs + "/mass_spring_damper.cfg --out " + out.string()) == 0);
    for (const char* f : {"timeseries.csv", "metrics.csv", "gp_models.csv", "kernel_profile.csv", "manifest.txt"})
        CHECK(fs::exists(out / f));

    const auto ts = rows(out / "timeseries.csv");
    REQUIRE(!ts.empty());
    CHECK(ts[0] == std::vector<std::string>{"t", "p", "d", "e_trad", "e_spatial", "f_trad", "f_spatial"});
    CHECK(slurp(out / "timeseries.csv").rfind("# config_checksum=", 0) == 0);

    int trad = 0, spatial = 0;
    for (const auto& r : rows(out / "metrics.csv")) {
        trad += r[0] == "traditional";
        spatial += r[0] == "spatial";
    }
    CHECK(trad == 10);
    CHECK(spatial == 10);
}

TEST_CASE("variant none leaves the feedforward columns at zero") {
    const fs::path out = scratch("none");
    REQUIRE(run("simulate --config " + kConfigs + "/mass_spring_damper.cfg --variant none --out " + out.string()) == 0);
    const auto ts = rows(out / "timeseries.csv");
    for (std::size_t i = 1; i < ts.size(); ++i) {
        CHECK(std::stod(ts[i][5]) == 0.0);
        CHECK(std::stod(ts[i][6]) == 0.0);
    }
    int none = 0;
    for (const auto& r : rows(out / "metrics.csv")) none += r[0] == "none";
    CHECK(none == 10);
}

TEST_CASE("repeated runs are byte identical") {
    const fs::path a = scratch("rep_a"), b = scratch("rep_b");
    const std::string cfg = kConfigs + "/mass_spring_damper.cfg";
    REQUIRE(run("simulate --config " + cfg + " --out " + a.string()) == 0);
    REQUIRE(run("simulate --config " + cfg + " --out " + b.string()) == 0);
    for (const char* f : {"timeseries.csv", "metrics.csv", "gp_models.csv", "kernel_profile.csv"})
        CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("sweep writes one directory per config") {
    const fs::path dir = scratch("sweep_in");
    fs::create_directories(dir);
    write(dir / "slow.cfg", "scenario.periods = 2\nrc.variant = spatial\n");
    write(dir / "fast.cfg", "scenario.periods = 2\nrc.variant = traditional\n");
    const fs::path out = scratch("sweep_out");
    REQUIRE(run("simulate --jobs 2 --config " + (dir / "slow.cfg").string() + " --config " + (dir / "fast.cfg").string() +
                " --out " + out.string()) == 0);
    CHECK(fs::exists(out / "slow" / "metrics.csv"));
    CHECK(fs::exists(out / "fast" / "metrics.csv"));
}

TEST_CASE("kernel-profile and design-report") {
    const fs::path out = scratch("kernel") / "kernel.csv";
    REQUIRE(run("kernel-profile --config " + kConfigs + "/kernel_figure.cfg --out " + out.string()) == 0);
    const auto k = rows(out);
    CHECK(k[0] == std::vector<std::string>{"lag", "covariance"});
    CHECK(k.size() == 802);
    CHECK(run("design-report --config " + kConfigs + "/mass_spring_damper.cfg") == 0);
}

TEST_CASE("exit codes") {
    const fs::path dir = scratch("codes");
    fs::create_directories(dir);
    write(dir / "bad.cfg", "plant.J = -1\n");
    write(dir / "unknown.cfg", "plant.mass = 1\n");
    write(dir / "design.cfg", "controller.crossover_hz = 200\ncontroller.lead_ratio = 2\ncontroller.lowpass_multiple = 2\n");
    write(dir / "diverge.cfg", "learning.zero_radius_limit = 0.9\nrc.variant = traditional\n");
    write(dir / "ok.cfg", "scenario.periods = 2\n");
    CHECK(run("simulate --config " + (dir / "bad.cfg").string() + " --out " + (dir / "o1").string()) == 1);
    CHECK(run("simulate --config " + (dir / "unknown.cfg").string() + " --out " + (dir / "o2").string()) == 1);
    CHECK(run("simulate --config " + (dir / "design.cfg").string() + " --out " + (dir / "o3").string()) == 3);
    CHECK(run("design-report --config " + (dir / "design.cfg").string()) == 3);
    CHECK(run("simulate --config " + (dir / "diverge.cfg").string() + " --out " + (dir / "o4").string()) == 2);
    CHECK(run("simulate --config " + (dir / "ok.cfg").string() + " --out /proc/gprc_forbidden") == 1);
    CHECK(run("simulate --config " + (dir / "missing.cfg").string() + " --out " + (dir / "o5").string()) == 1);
    CHECK(run("simulate --config " + (dir / "ok.cfg").string() + " --out " + (dir / "o6").string() + " --variant maybe") == 1);
    CHECK(run("") == 1);
}

}
