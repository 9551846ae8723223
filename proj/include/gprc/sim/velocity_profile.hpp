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

#include <vector>

namespace gprc {

struct VelocitySegment {
    double duration = 0.0;   ///< seconds, > 0
    double v_start = 0.0;    ///< rad/s
    double v_end = 0.0;      ///< rad/s, linear ramp from v_start
};

/// Piecewise-linear velocity schedule. Past the last segment the final
/// velocity is held.
class VelocityProfile {
public:
    VelocityProfile() = default;
    explicit VelocityProfile(std::vector<VelocitySegment> segments);

    double velocity(double t) const;
    /// Exact integral of the velocity from 0 to t.
    double position(double t) const;

    const std::vector<VelocitySegment>& segments() const { return segments_; }
    double nominal_velocity() const { return segments_.empty() ? 0.0 : segments_.front().v_start; }

    /// Constant v_nominal for the given number of periods, a linear ramp to
    /// v_changed over ramp_duration, then v_changed.
    static VelocityProfile step_change(double v_nominal, double v_changed, double periods_before_change,
                                       double spatial_period, double ramp_duration);

private:
    std::vector<VelocitySegment> segments_;
};

} // namespace gprc
