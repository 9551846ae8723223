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

#include <numbers>
#include <vector>

namespace gprc {

struct Harmonic {
    double amplitude = 0.0; ///< actuation units
    double frequency = 1.0; ///< cycles per spatial period
    double phase = 0.0;     ///< radians
};

/// Spatially periodic disturbance d_p(p) = sum a sin(n 2 pi p / p_per + phi).
struct DisturbanceMap {
    std::vector<Harmonic> harmonics;
    double period = 2.0 * std::numbers::pi;

    double operator()(double p) const;
    /// Sum of |amplitude|, an upper bound on |d_p|.
    double amplitude_bound() const;

    /// 1.5 sin p + 0.8 sin 3p + 0.6 sin 9p + 0.4 sin 18p + 0.2 sin 27p.
    static DisturbanceMap mass_spring_damper_case();
};

inline double d_p_eval(const DisturbanceMap& map, double p) { return map(p); }

} // namespace gprc
