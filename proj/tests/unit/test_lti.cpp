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
#include <complex>
#include <limits>
#include <vector>

#include "gprc/errors.hpp"
#include "gprc/lti.hpp"
#include "gprc/loop_design.hpp"

using namespace gprc;
using cd = std::complex<double>;

namespace {

constexpr double kTs = 1e-3;

ContinuousTfd msd_plant() { return ContinuousTfd(make_poly<double>({1.0}), make_poly<double>({1.0, 1.0, 1e4})); }

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST_SUITE("lti") {

TEST_CASE("zoh maps each continuous pole to exp(s ts)") {
    const DiscreteStateSpaced p = zoh_discretize(msd_plant(), kTs);
    REQUIRE(p.order() == 2);
    // s = -0.5 +- j sqrt(1e4 - 0.25)
    const double wd = std::sqrt(1e4 - 0.25);
    const cd expected = std::exp(cd(-0.5, wd) * kTs);
    const ComplexVector<double> z = p.poles();
    double best_pos = 1e9, best_neg = 1e9;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        best_pos = std::min(best_pos, std::abs(z(i) - expected));
        best_neg = std::min(best_neg, std::abs(z(i) - std::conj(expected)));
        CHECK(std::abs(z(i)) == doctest::Approx(std::exp(-0.0005)).epsilon(1e-12));
    }
    CHECK(best_pos < 1e-10);
    CHECK(best_neg < 1e-10);
}

TEST_CASE("zoh preserves the static gain") {
    const DiscreteTfd tf = to_tf(zoh_discretize(msd_plant(), kTs));
    CHECK(rel_err(tf.dc_gain(), 1e-4) < 1e-9);
}

TEST_CASE("zoh of a first-order lag matches the closed form") {
    const double a = 7.0;
    const DiscreteTfd tf = to_tf(zoh_discretize(ContinuousTfd(make_poly<double>({1.0}), make_poly<double>({1.0, a})), kTs));
    const double pole = std::exp(-a * kTs);
    // (1 - e^{-aT})/a / (z - e^{-aT})
    REQUIRE(tf.den().size() == 2);
    CHECK(rel_err(-tf.den()(1) / tf.den()(0), pole) < 1e-12);
    CHECK(rel_err(tf.num()(tf.num().size() - 1) / tf.den()(0), (1.0 - pole) / a) < 1e-10);
}

TEST_CASE("zoh of an integrator is an accumulator with gain ts") {
    DiscreteStateSpaced acc = zoh_discretize(ContinuousTfd(make_poly<double>({1.0}), make_poly<double>({1.0, 0.0})), kTs);
    REQUIRE(acc.order() == 1);
    CHECK(acc.A()(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(acc.B()(0) * acc.C()(0) == doctest::Approx(kTs).epsilon(1e-12));
    CHECK(acc.D() == 0.0);
    for (int k = 0; k < 5; ++k) CHECK(acc.step(1.0) == doctest::Approx(k * kTs).epsilon(1e-12));
}

TEST_CASE("zoh rejects improper and degenerate systems") {
    CHECK_THROWS_AS(ContinuousTfd(make_poly<double>({1.0, 0.0, 0.0}), make_poly<double>({1.0, 1.0})), std::invalid_argument);
    CHECK_THROWS_AS(ContinuousTfd(make_poly<double>({1.0}), make_poly<double>({0.0, 0.0})), std::invalid_argument);
    CHECK_THROWS_AS(zoh_discretize(msd_plant(), 0.0), std::invalid_argument);
}

TEST_CASE("step on trivial systems") {
    DiscreteStateSpaced p = zoh_discretize(msd_plant(), kTs);
    CHECK(p.step(0.0) == 0.0);
    CHECK(p.state().norm() == 0.0);

    DiscreteStateSpaced g = DiscreteStateSpaced::gain(2.0, kTs);
    CHECK(g.step(1.0) == 2.0);
    CHECK(g.step(0.0) == 0.0);
    CHECK(g.step(0.0) == 0.0);
}

TEST_CASE("step rejects non-finite input") {
    DiscreteStateSpaced p = zoh_discretize(msd_plant(), kTs);
    CHECK_THROWS_AS(p.step(std::numeric_limits<double>::quiet_NaN()), SimulationAbort);
    CHECK_THROWS_AS(p.step(std::numeric_limits<double>::infinity()), SimulationAbort);
}

TEST_CASE("unit step settles at the static gain") {
    DiscreteStateSpaced p = zoh_discretize(msd_plant(), kTs);
    double y = 0.0;
    // decay rate 0.5/s: 60 s leaves e^-30 of the transient
    for (int k = 0; k < 60000; ++k) y = p.step(1.0);
    CHECK(rel_err(y, 1e-4) < 1e-9);
}

TEST_CASE("frequency response of static and resonant systems") {
    const std::vector<double> grid{0.0, 1.0, 100.0, 499.0};
    const auto g = freq_response(DiscreteStateSpaced::gain(3.5, kTs), grid);
    for (const cd& v : g.values) CHECK(std::abs(v - cd(3.5, 0.0)) < 1e-15);

    const ContinuousTfd pc = msd_plant();
    const DiscreteStateSpaced pd = zoh_discretize(pc, kTs);
    CHECK(rel_err(std::abs(freq_response(pd, std::vector<double>{1e-6}).values[0]), 1e-4) < 1e-8);

    // |P(j w0)| = 1/(d w0) at w0 = sqrt(k/J)
    const double f0 = 100.0 / (2.0 * std::numbers::pi);
    CHECK(rel_err(std::abs(freq_response(pc, std::vector<double>{f0}).values[0]), 1e-2) < 1e-12);

    const std::vector<double> fine = linear_grid(10.0, 20.0, 20001);
    const auto r = freq_response(pd, fine);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < r.size(); ++i)
        if (std::abs(r.values[i]) > std::abs(r.values[peak])) peak = i;
    CHECK(fine[peak] == doctest::Approx(f0).epsilon(1e-3));
    CHECK(std::abs(r.values[peak]) == doctest::Approx(1e-2).epsilon(1e-2));
}

TEST_CASE("frequency response rejects frequencies at or above Nyquist") {
    const DiscreteStateSpaced pd = zoh_discretize(msd_plant(), kTs);
    CHECK_THROWS_AS(freq_response(pd, std::vector<double>{500.0}), std::invalid_argument);
    CHECK_THROWS_AS(freq_response(pd, std::vector<double>{10.0, 5.0}), std::invalid_argument);
}

TEST_CASE("tustin of a first-order lag") {
    const DiscreteTfd d = tustin_discretize(ContinuousTfd(make_poly<double>({1.0}), make_poly<double>({1.0, 1.0})), kTs);
    // T/(2+T) (z+1) / (z - (2-T)/(2+T))
    const double n0 = d.num()(0) / d.den()(0), n1 = d.num()(1) / d.den()(0), a1 = d.den()(1) / d.den()(0);
    CHECK(rel_err(n0, kTs / (2.0 + kTs)) < 1e-12);
    CHECK(rel_err(n1, kTs / (2.0 + kTs)) < 1e-12);
    CHECK(rel_err(-a1, (2.0 - kTs) / (2.0 + kTs)) < 1e-12);
}

TEST_CASE("realization round trip reproduces the transfer function") {
    const DiscreteTfd tf(make_poly<double>({0.5, -0.2, 0.1}), make_poly<double>({2.0, -1.2, 0.4, -0.05}), kTs);
    const DiscreteTfd back = to_tf(realize(tf));
    for (double f : {0.0, 3.0, 77.0, 310.0}) CHECK(std::abs(back.at_hz(f) - tf.at_hz(f)) < 1e-12);
}

TEST_CASE("connect_feedback with a zero controller") {
    const DiscreteStateSpaced p = zoh_discretize(msd_plant(), kTs);
    const ClosedLoop<double> cl = connect_feedback(p, DiscreteStateSpaced::gain(0.0, kTs));
    for (double f : {0.5, 15.0, 120.0}) {
        const cd z = std::exp(cd(0.0, 2.0 * std::numbers::pi * f * kTs));
        CHECK(std::abs(evaluate(cl.process_sensitivity, z) - evaluate(p, z)) < 1e-14);
        CHECK(std::abs(evaluate(cl.sensitivity, z) - 1.0) < 1e-14);
        CHECK(std::abs(evaluate(cl.complementary_sensitivity, z)) < 1e-14);
    }
}

TEST_CASE("connect_feedback with unit static plant and controller") {
    const ClosedLoop<double> cl = connect_feedback(DiscreteStateSpaced::gain(1.0, kTs), DiscreteStateSpaced::gain(1.0, kTs));
    CHECK(cl.sensitivity.D() == doctest::Approx(0.5));
    CHECK(cl.complementary_sensitivity.D() == doctest::Approx(0.5));
    CHECK_THROWS_AS(connect_feedback(DiscreteStateSpaced::gain(1.0, kTs), DiscreteStateSpaced::gain(-1.0, kTs)),
                    DesignError);
    CHECK_THROWS_AS(connect_feedback(DiscreteStateSpaced::gain(1.0, kTs), DiscreteStateSpaced::gain(1.0, 2 * kTs)),
                    std::invalid_argument);
}

TEST_CASE("designed loop: S + T = 1 and both closed-loop routes agree") {
    const DiscreteStateSpaced p = zoh_discretize(msd_plant(), kTs);
    const FeedbackDesign fb = design_feedback(msd_plant(), LoopShapeSpec{}, kTs);
    const ClosedLoop<double> cl = connect_feedback(p, fb.controller);
    const LoopTfs tfs = closed_loop_tfs(to_tf(p), fb.controller_tf);

    const std::vector<double> grid = log_grid(0.1, 499.0, 400);
    const auto s = freq_response(cl.sensitivity, grid);
    const auto t = freq_response(cl.complementary_sensitivity, grid);
    const auto ps = freq_response(cl.process_sensitivity, grid);
    const auto t_poly = freq_response(tfs.complementary_sensitivity, grid);
    const auto ps_poly = freq_response(tfs.process_sensitivity, grid);
    double identity = 0.0, t_gap = 0.0, ps_gap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        identity = std::max(identity, std::abs(s.values[i] + t.values[i] - 1.0));
        t_gap = std::max(t_gap, std::abs(t.values[i] - t_poly.values[i]) / std::abs(t.values[i]));
        ps_gap = std::max(ps_gap, std::abs(ps.values[i] - ps_poly.values[i]) / std::abs(ps.values[i]));
    }
    CHECK(identity < 1e-10);
    CHECK(t_gap < 1e-7);
    CHECK(ps_gap < 1e-7);
}

TEST_CASE("stepping is deterministic") {
    auto run = [] {
        DiscreteStateSpaced p = zoh_discretize(msd_plant(), kTs);
        std::vector<double> y;
        for (int k = 0; k < 500; ++k) y.push_back(p.step(std::sin(0.01 * k)));
        return y;
    };
    CHECK(run() == run());
}

}
