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
#include <vector>

#include "gprc/gp.hpp"

namespace gprc {

/// mod(p, period) mapped into [0, period).
double wrap_position(double p, double period);

struct SpatialRcConfig {
    double period = 2.0 * std::numbers::pi; ///< p_per, radians
    int downsample = 5;                      ///< store every N-th observation
    int preview = 0;                         ///< n_l of the learning filter
    double ts = 1e-3;
    KernelHyperd kernel{};                   ///< kernel.period must equal period

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// p~ = mod(p - n_l v ts, p_per): the position a causally filtered
/// learning sample actually belongs to.
double preview_position(double p, double velocity, const SpatialRcConfig& cfg);

/**
 * Repetitive controller whose memory loop lives in the position domain.
 *
 * Each period's learning samples are tagged with their preview-shifted,
 * wrapped positions and accumulated onto the previous period's GP
 * estimate (target = l + mu_prev(p~)). At every period boundary the
 * buffer is fitted into a new GP that drives the feedforward for the
 * whole next period, which realizes a one-period delay in position.
 *
 * Per sample, the owner calls
 *   1. crossed_boundary(p) / advance_period()  (or sync(p))
 *   2. feedforward(p)
 *   3. record_observation(l, p, v)
 * with p the unwrapped (cumulative) position.
 */
class SpatialRepetitiveController {
public:
    explicit SpatialRepetitiveController(SpatialRcConfig cfg);

    const SpatialRcConfig& config() const { return cfg_; }

    /// True when the cumulative position has reached the end of the
    /// current period.
    bool crossed_boundary(double p) const;

    /// Fits the active buffer into the model used during the next period,
    /// clears the buffer and increments the completed-period count.
    void advance_period();

    /// Advances over every boundary p has passed. Returns the number of
    /// periods advanced.
    int sync(double p);

    /// u_ff = mu_prev(mod(p, p_per)). Zero until the first boundary.
    double feedforward(double p) const;

    /**
     * Stores (p~, l + mu_prev(p~)) on every downsample-th accepted call.
     * Calls whose preview-shifted cumulative position still lies in the
     * previous period are dropped: their learning signal was produced
     * under the previous model. Returns true when a sample was stored.
     */
    bool record_observation(double learning, double p, double velocity);

    const GpModeld& previous_model() const { return previous_; }
    const std::vector<double>& buffer_positions() const { return buf_positions_; }
    const std::vector<double>& buffer_targets() const { return buf_targets_; }
    int completed_periods() const { return completed_; }
    std::size_t fit_count() const { return fits_; }
    std::size_t sample_counter() const { return counter_; }
    double last_wrapped_position() const { return last_wrapped_; }

private:
    SpatialRcConfig cfg_;
    GpModeld previous_;
    std::vector<double> buf_positions_;
    std::vector<double> buf_targets_;
    std::size_t counter_ = 0;
    int completed_ = 0;
    std::size_t fits_ = 0;
    double last_wrapped_ = 0.0;
};

/// Backward-difference velocity estimate (p(k) - p(k-1)) / ts; the first
/// call returns the supplied initial guess.
class BackwardDifferenceVelocity {
public:
    BackwardDifferenceVelocity(double ts, double initial = 0.0) : ts_(ts), initial_(initial) {}
    double update(double p);

private:
    double ts_;
    double initial_;
    std::optional<double> last_;
};

} // namespace gprc
