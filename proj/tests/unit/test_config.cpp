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

#include <algorithm>
#include <numbers>
#include <string>

#include "gprc/app/config.hpp"
#include "gprc/errors.hpp"

using namespace gprc;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("minimal config takes documented defaults") {
    const LoadedConfig c = parse_config("plant.J = 1\nplant.d = 1\nplant.k = 1e4\nrc.variant = none\n");
    CHECK(c.config.variant == RcVariant::None);
    CHECK(c.config.sample_rate_hz == 1000.0);
    CHECK(c.config.spatial.downsample == 5);
    CHECK(c.config.spatial.kernel.sigma_n == 1e-6);
    CHECK(c.config.resolved_n_conv() == 1717);
    CHECK(contains(c.defaulted, "sim.fs"));
    CHECK(contains(c.defaulted, "kernel.length_scale"));
    CHECK_FALSE(contains(c.defaulted, "plant.J"));
}

TEST_CASE("case-study hyperparameters are accepted verbatim") {
    const LoadedConfig c = parse_config(
        "kernel.sigma_n = 1e-6\nkernel.length_scale = 0.1\nkernel.sigma_f = 1\n"
        "spatial.period = 2pi\nkernel.period = 2*pi\n# comment\n\n");
    CHECK(c.config.spatial.kernel.sigma_n == 1e-6);
    CHECK(c.config.spatial.kernel.length_scale == 0.1);
    CHECK(c.config.spatial.kernel.sigma_f == 1.0);
    CHECK(c.config.spatial.period == 2.0 * std::numbers::pi);
    CHECK(c.config.spatial.kernel.period == 2.0 * std::numbers::pi);
}

TEST_CASE("invalid values are rejected with the field name") {
    CHECK(error_of("plant.J = -1\n").find("plant.J") != std::string::npos);
    CHECK(error_of("kernel.length_scale = 0\n").find("kernel.length_scale") != std::string::npos);
    CHECK(error_of("spatial.downsample = abc\n").find("spatial.downsample") != std::string::npos);
    CHECK(error_of("rc.variant = sometimes\n").find("rc.variant") != std::string::npos);
    CHECK(error_of("spatial.period = 3\nkernel.period = 2pi\n").find("kernel.period") != std::string::npos);
}

TEST_CASE("unknown and duplicate keys are errors") {
    const std::string msg = error_of("plant.J = 1\nplant.mass = 2\nfoo.bar = 3\n");
    CHECK(msg.find("plant.mass") != std::string::npos);
    CHECK(msg.find("foo.bar") != std::string::npos);
    CHECK_FALSE(error_of("plant.J = 1\nplant.J = 2\n").empty());
    CHECK_FALSE(error_of("plant.J 1\n").empty());
}

TEST_CASE("lists and overrides parse") {
    const LoadedConfig c = parse_config(
        "disturbance.harmonics = 1:2, 0.5:3:0.25\nvelocity.segments = 2:1:1, 1:1:3\n"
        "traditional.q_taps = 0.25, 0.5, 0.25\ntraditional.n_conv = 1500\nspatial.preview = 3\n"
        "scenario.position_mode = tracking\n");
    REQUIRE(c.config.disturbance.harmonics.size() == 2);
    CHECK(c.config.disturbance.harmonics[1].phase == 0.25);
    CHECK(c.config.velocity.segments().size() == 2);
    CHECK(c.config.q_taps.size() == 3);
    CHECK(c.config.resolved_n_conv() == 1500);
    CHECK(c.config.preview_override == 3);
    CHECK(c.config.position_mode == PositionMode::ClosedLoopTracking);
}

TEST_CASE("checksum follows the resolved settings, not the text") {
    const LoadedConfig a = parse_config("plant.k = 1e4\n");
    const LoadedConfig b = parse_config("# same thing\nplant.k = 10000\n");
    const LoadedConfig c = parse_config("plant.k = 2e4\n");
    CHECK(a.checksum == b.checksum);
    CHECK(a.checksum != c.checksum);
    CHECK(checksum_hex(a.checksum).size() == 16);
    // FNV-1a 64 reference values
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("canonical dump parses back to the same configuration") {
    const LoadedConfig a = parse_config("rc.variant = spatial\nvelocity.nominal = 3\nvelocity.changed = 4\n");
    const LoadedConfig b = parse_config(a.canonical);
    CHECK(a.canonical == b.canonical);
    CHECK(a.checksum == b.checksum);
}

TEST_CASE("missing file is a config error") {
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

}
