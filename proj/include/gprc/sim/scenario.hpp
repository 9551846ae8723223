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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gprc/baseline_rc.hpp"
#include "gprc/loop_design.hpp"
#include "gprc/sim/disturbance.hpp"
#include "gprc/sim/velocity_profile.hpp"
#include "gprc/spatial_rc.hpp"

namespace gprc {

enum class RcVariant { None, Traditional, Spatial, Both };
enum class PositionMode { IdealIntegration, ClosedLoopTracking };
enum class VelocitySource { Profile, BackwardDifference };

std::string to_string(RcVariant v);
std::string to_string(PositionMode m);
std::string to_string(VelocitySource s);

/// Mass-spring-damper P(s) = 1/(J s^2 + d s + k).
struct PlantParams {
    double inertia = 1.0;
    double damping = 1.0;
    double stiffness = 1e4;

    ContinuousTfd transfer_function() const;
};

struct ScenarioConfig {
    PlantParams plant;
    double sample_rate_hz = 1000.0;
    LoopShapeSpec controller;
    InverseOptions inversion;
    RcVariant variant = RcVariant::Both;

    /// Spatial RC settings; spatial.preview and spatial.ts are filled in
    /// from the learning-filter design unless preview_override is set.
    SpatialRcConfig spatial;
    std::optional<int> preview_override;
    VelocitySource velocity_source = VelocitySource::Profile;

    /// Traditional RC memory length; default round(p_per / (v_nominal ts)).
    std::optional<std::size_t> n_conv;
    std::vector<double> q_taps;

    DisturbanceMap disturbance = DisturbanceMap::mass_spring_damper_case();
    VelocityProfile velocity = VelocityProfile::step_change(3.6593, 5.2, 3.0, 2.0 * std::numbers::pi, 0.5);
    PositionMode position_mode = PositionMode::IdealIntegration;

    /// Run until this many position periods are complete...
    int periods = 10;
    /// ...unless a fixed duration (seconds, > 0) is given.
    double duration = 0.0;
    /// The run aborts once |e| exceeds this bound (or turns non-finite).
    double abort_threshold = 1e3;

    double ts() const { return 1.0 / sample_rate_hz; }
    std::size_t resolved_n_conv() const;
    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct PositionSeries {
    std::vector<double> position;
    std::vector<double> velocity;
};

/**
 * Position driving the disturbance. IdealIntegration integrates the
 * profile with the trapezoidal rule. ClosedLoopTracking feeds that
 * integral as reference through tracking_loop (a copy of the designed
 * closed loop) and reports its output, with backward-difference velocity.
 *
 * With samples == 0 the series runs up to and including the first sample
 * whose position reaches stop_distance.
 */
PositionSeries generate_position(const VelocityProfile& profile, double ts, PositionMode mode, std::size_t samples,
                                 double stop_distance = 0.0, const DiscreteStateSpaced* tracking_loop = nullptr);

/// Start index of every period that begins inside the series: element j is
/// the first sample with p >= j * period (element 0 is 0).
std::vector<std::size_t> period_boundaries(const std::vector<double>& position, double period);

struct PeriodMetric {
    int period = 0;          ///< 1-based
    std::size_t start = 0;   ///< first sample
    std::size_t end = 0;     ///< one past the last sample
    double norm = 0.0;       ///< ||e_j||_2 / N_j
};

/// Normalized 2-norm of every complete period. Throws std::invalid_argument
/// if no period is complete.
std::vector<PeriodMetric> period_metrics(const std::vector<double>& error, const std::vector<std::size_t>& boundaries);

struct LoopTrace {
    std::vector<double> error;
    std::vector<double> u_fb;
    std::vector<double> f;   ///< RC output (zero when the RC is disabled)
};

struct GpSnapshot {
    int period = 0; ///< the period whose data was fitted
    std::vector<double> positions;
    std::vector<double> targets;
    std::vector<double> alpha;
    double jitter = 0.0;
};

struct ScenarioDesign {
    FeedbackDesign feedback;
    NonCausalFilter spatial_learning;
    NonCausalFilter traditional_learning;
    std::size_t n_conv = 0;
    int spatial_preview = 0;
};

struct ScenarioResult {
    RcVariant variant = RcVariant::Both;
    std::vector<double> t, p, v, d;
    /// Loop with the traditional RC (RC off unless the variant enables it).
    LoopTrace traditional;
    /// Loop with the spatial RC (RC off unless the variant enables it).
    LoopTrace spatial;
    std::vector<std::size_t> boundaries;
    std::vector<GpSnapshot> gp_snapshots;
    std::optional<ScenarioDesign> design;

    std::size_t size() const { return t.size(); }
};

/// Designs the loop and learning filters for cfg.
ScenarioDesign design_scenario(const ScenarioConfig& cfg);

/**
 * Simulates the collocated-disturbance loop for both controller columns
 * with shared position and disturbance streams:
 *
 *   e = -y,  u = C(e + f_trad) + f_spatial + d_p(p),  y = P u
 *
 * Throws SimulationAbort (with the sample index) on divergence and
 * DesignError if the loop cannot be designed.
 */
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// period_metrics for one of the two controller columns.
std::vector<PeriodMetric> period_metrics(const ScenarioResult& r, bool spatial_column);

} // namespace gprc
