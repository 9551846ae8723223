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

#include "gprc/sim/disturbance.hpp"

#include <cmath>

namespace gprc {

double DisturbanceMap::operator()(double p) const {
    const double scale = 2.0 * std::numbers::pi / period;
    double d = 0.0;
    for (const Harmonic& h : harmonics) d += h.amplitude * std::sin(h.frequency * scale * p + h.phase);
    return d;
}

double DisturbanceMap::amplitude_bound() const {
    double s = 0.0;
    for (const Harmonic& h : harmonics) s += std::abs(h.amplitude);
    return s;
}

DisturbanceMap DisturbanceMap::mass_spring_damper_case() {
    return DisturbanceMap{{{1.5, 1.0, 0.0}, {0.8, 3.0, 0.0}, {0.6, 9.0, 0.0}, {0.4, 18.0, 0.0}, {0.2, 27.0, 0.0}},
                          2.0 * std::numbers::pi};
}

} // namespace gprc
