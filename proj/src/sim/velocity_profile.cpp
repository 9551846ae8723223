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

#include "gprc/sim/velocity_profile.hpp"

#include <cmath>
#include <stdexcept>

namespace gprc {

VelocityProfile::VelocityProfile(std::vector<VelocitySegment> segments) : segments_(std::move(segments)) {
    for (const auto& s : segments_) {
        if (!(s.duration > 0.0) || !std::isfinite(s.duration))
            throw std::invalid_argument("VelocityProfile: segment durations must be > 0");
        if (!std::isfinite(s.v_start) || !std::isfinite(s.v_end))
            throw std::invalid_argument("VelocityProfile: velocities must be finite");
    }
}

double VelocityProfile::velocity(double t) const {
    if (segments_.empty()) return 0.0;
    double t0 = 0.0;
    for (const auto& s : segments_) {
        if (t < t0 + s.duration) {
            const double tau = std::max(0.0, t - t0);
            return s.v_start + (s.v_end - s.v_start) * tau / s.duration;
        }
        t0 += s.duration;
    }
    return segments_.back().v_end;
}

double VelocityProfile::position(double t) const {
    if (segments_.empty() || t <= 0.0) return 0.0;
    double p = 0.0, t0 = 0.0;
    for (const auto& s : segments_) {
        const double tau = std::min(t - t0, s.duration);
        p += s.v_start * tau + 0.5 * (s.v_end - s.v_start) / s.duration * tau * tau;
        if (t <= t0 + s.duration) return p;
        t0 += s.duration;
    }
    return p + segments_.back().v_end * (t - t0);
}

VelocityProfile VelocityProfile::step_change(double v_nominal, double v_changed, double periods_before_change,
                                             double spatial_period, double ramp_duration) {
    if (!(v_nominal > 0.0)) throw std::invalid_argument("VelocityProfile: nominal velocity must be > 0");
    std::vector<VelocitySegment> segs{{periods_before_change * spatial_period / v_nominal, v_nominal, v_nominal}};
    if (ramp_duration > 0.0) segs.push_back({ramp_duration, v_nominal, v_changed});
    else segs.push_back({1e-9, v_changed, v_changed});
    return VelocityProfile(std::move(segs));
}

} // namespace gprc
