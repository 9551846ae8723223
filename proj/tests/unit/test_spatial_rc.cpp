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

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "gprc/errors.hpp"
#include "gprc/spatial_rc.hpp"
#include "oracles/disturbance_oracle.hpp"

using namespace gprc;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kV = 3.6593;

SpatialRcConfig config(int downsample, int preview, double sigma_n = 1e-6) {
    SpatialRcConfig c;
    c.downsample = downsample;
    c.preview = preview;
    c.ts = 1e-3;
    c.kernel.sigma_n = sigma_n;
    return c;
}

/// Feeds one constant-velocity period of learning samples produced by fn.
template<typename Fn>
void feed(SpatialRepetitiveController& rc, double p0, int samples, Fn fn) {
    for (int k = 0; k < samples; ++k) {
        const double p = p0 + kV * 1e-3 * k;
        rc.sync(p);
        rc.record_observation(fn(preview_position(p, kV, rc.config())), p, kV);
    }
}

} // namespace

TEST_SUITE("spatial_rc") {

TEST_CASE("wrap_position examples") {
    CHECK(wrap_position(7.5, kTwoPi) == doctest::Approx(1.21681).epsilon(1e-5));
    CHECK(wrap_position(7.5, kTwoPi) == doctest::Approx(7.5 - kTwoPi).epsilon(1e-15));
    CHECK(wrap_position(kTwoPi, kTwoPi) == 0.0);
    CHECK(wrap_position(-0.5, kTwoPi) == doctest::Approx(kTwoPi - 0.5).epsilon(1e-15));
    CHECK(wrap_position(-1e-18, kTwoPi) < kTwoPi);
}

TEST_CASE("wrap_position stays in range and differs by whole periods") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const double p = u(rng);
        const double r = wrap_position(p, kTwoPi);
        CHECK(r >= 0.0);
        CHECK(r < kTwoPi);
        const double turns = (p - r) / kTwoPi;
        CHECK(std::abs(turns - std::round(turns)) < 1e-12);
    }
}

TEST_CASE("preview_position examples") {
    const SpatialRcConfig none = config(1, 0);
    for (double p : {0.0, 1.0, 7.5, -0.5}) CHECK(preview_position(p, kV, none) == wrap_position(p, kTwoPi));
    const SpatialRcConfig two = config(1, 2);
    CHECK(preview_position(1.0, kV, two) == doctest::Approx(0.9926814).epsilon(1e-9));
    CHECK(preview_position(1.0, -kV, two) == doctest::Approx(1.0073186).epsilon(1e-9));
}

TEST_CASE("config validation") {
    SpatialRcConfig c = config(1, 0);
    c.kernel.period = 3.0;
    CHECK_THROWS_AS(SpatialRepetitiveController{c}, std::invalid_argument);
    c = config(0, 0);
    CHECK_THROWS_AS(SpatialRepetitiveController{c}, std::invalid_argument);
}

TEST_CASE("first period stores raw learning samples") {
    SpatialRepetitiveController rc(config(1, 2));
    CHECK(rc.feedforward(0.1) == 0.0);
    CHECK(rc.record_observation(0.5, 0.1, kV));
    REQUIRE(rc.buffer_positions().size() == 1);
    CHECK(rc.buffer_positions()[0] == doctest::Approx(preview_position(0.1, kV, rc.config())).epsilon(1e-15));
    CHECK(rc.buffer_targets()[0] == 0.5);
}

TEST_CASE("later periods accumulate onto the previous estimate") {
    SpatialRepetitiveController rc(config(1, 0, 0.0));
    rc.record_observation(0.4, 1.0, kV);
    rc.sync(kTwoPi);
    REQUIRE(rc.completed_periods() == 1);
    CHECK(rc.previous_model().mean(1.0) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(rc.record_observation(0.1, kTwoPi + 1.0, kV));
    REQUIRE(rc.buffer_targets().size() == 1);
    CHECK(rc.buffer_targets()[0] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("downsampling keeps every N-th sample of a period") {
    for (int samples : {0, 4, 5, 23, 1717}) {
        SpatialRepetitiveController rc(config(5, 0));
        for (int k = 0; k < samples; ++k) rc.record_observation(0.01, 1e-4 * k, kV);
        CHECK(rc.buffer_positions().size() == static_cast<std::size_t>(samples / 5));
    }
}

TEST_CASE("boundaries fit once per period") {
    SpatialRepetitiveController rc(config(5, 2));
    CHECK(rc.sync(0.5) == 0);
    feed(rc, 0.0, 3 * 1718 + 10, [](double) { return 0.1; });
    CHECK(rc.completed_periods() == 3);
    CHECK(rc.fit_count() == 3);
    CHECK(rc.sync(10.0 * kTwoPi) == 7);
    CHECK(rc.fit_count() == 10);
}

TEST_CASE("empty buffer at a boundary gives zero feedforward") {
    SpatialRepetitiveController rc(config(1, 0));
    rc.sync(kTwoPi + 0.1);
    CHECK(rc.previous_model().empty());
    CHECK(rc.feedforward(kTwoPi + 0.2) == 0.0);
}

TEST_CASE("samples still belonging to the previous period are dropped") {
    SpatialRepetitiveController rc(config(1, 2));
    rc.sync(kTwoPi);
    // shifted position 2 pi - 0.0073 lies in period 1
    CHECK_FALSE(rc.record_observation(1.0, kTwoPi, kV));
    CHECK(rc.buffer_positions().empty());
    CHECK(rc.sample_counter() == 0);
    CHECK(rc.record_observation(1.0, kTwoPi + 0.01, kV));
}

TEST_CASE("learned feedforward reproduces the disturbance map") {
    SpatialRepetitiveController rc(config(5, 2));
    feed(rc, 0.0, 1720, [](double pt) { return oracle::case_disturbance(pt); });
    REQUIRE(rc.completed_periods() == 1);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double p = kTwoPi + kTwoPi * i / 2000.0;
        worst = std::max(worst, std::abs(rc.feedforward(p) - oracle::case_disturbance(p)));
    }
    CHECK(worst < 0.02 * 3.5);
}

TEST_CASE("feedforward is periodic and stored positions are wrapped") {
    SpatialRepetitiveController rc(config(5, 2));
    feed(rc, 0.0, 2 * 1718, [](double pt) { return std::cos(2.0 * pt); });
    for (double x : rc.buffer_positions()) {
        CHECK(x >= 0.0);
        CHECK(x < kTwoPi);
    }
    for (int i = 0; i < 100; ++i) {
        const double p = 0.063 * i;
        CHECK(std::abs(rc.feedforward(p) - rc.feedforward(p + kTwoPi)) < 1e-10);
    }
}

TEST_CASE("memory loop telescopes period-by-period learning") {
    // learning signal a sin(p) every period; after j fits the estimate is j a sin(p)
    SpatialRepetitiveController rc(config(5, 0, 1e-4));
    const double a = 0.3;
    feed(rc, 0.0, 3 * 1718 + 5, [a](double pt) { return a * std::sin(pt); });
    REQUIRE(rc.completed_periods() == 3);
    for (double p : {0.4, 1.7, 3.3, 5.9}) CHECK(rc.feedforward(p) == doctest::Approx(3.0 * a * std::sin(p)).epsilon(1e-3));
}

TEST_CASE("identical inputs give identical controllers") {
    auto run = [] {
        SpatialRepetitiveController rc(config(5, 2));
        std::vector<double> out;
        for (int k = 0; k < 4000; ++k) {
            const double p = kV * 1e-3 * k;
            rc.sync(p);
            out.push_back(rc.feedforward(p));
            rc.record_observation(std::sin(3.0 * p), p, kV);
        }
        return out;
    };
    CHECK(run() == run());
}

TEST_CASE("non-finite observations abort") {
    SpatialRepetitiveController rc(config(1, 0));
    CHECK_THROWS_AS(rc.record_observation(std::numeric_limits<double>::quiet_NaN(), 0.1, kV), SimulationAbort);
    CHECK_THROWS_AS(rc.record_observation(0.1, 0.1, std::numeric_limits<double>::infinity()), SimulationAbort);
}

TEST_CASE("backward-difference velocity") {
    BackwardDifferenceVelocity v(1e-3, 2.5);
    CHECK(v.update(1.0) == 2.5);
    CHECK(v.update(1.004) == doctest::Approx(4.0).epsilon(1e-9));
}

}
