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

#include "gprc/spatial_rc.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gprc/errors.hpp"

namespace gprc {

double wrap_position(double p, double period) {
    double r = std::fmod(p, period);
    if (r < 0.0) r += period;
    // fmod of a tiny negative value can round up to exactly period.
    if (r >= period) r = 0.0;
    return r;
}

void SpatialRcConfig::validate() const {
    auto bad = [](const std::string& msg) { throw std::invalid_argument("SpatialRcConfig: " + msg); };
    if (!(period > 0.0) || !std::isfinite(period)) bad("period must be > 0");
    if (downsample < 1) bad("downsample must be >= 1");
    if (preview < 0) bad("preview must be >= 0");
    if (!(ts > 0.0)) bad("ts must be > 0");
    kernel.validate();
    if (std::abs(kernel.period - period) > 1e-12 * period) bad("kernel period must equal the spatial period");
}

double preview_position(double p, double velocity, const SpatialRcConfig& cfg) {
    return wrap_position(p - cfg.preview * velocity * cfg.ts, cfg.period);
}

SpatialRepetitiveController::SpatialRepetitiveController(SpatialRcConfig cfg) : cfg_(std::move(cfg)), previous_(cfg_.kernel) {
    cfg_.validate();
}

bool SpatialRepetitiveController::crossed_boundary(double p) const {
    return p >= (completed_ + 1) * cfg_.period;
}

void SpatialRepetitiveController::advance_period() {
    previous_ = fit(buf_positions_, buf_targets_, cfg_.kernel);
    ++fits_;
    buf_positions_.clear();
    buf_targets_.clear();
    counter_ = 0;
    ++completed_;
}

int SpatialRepetitiveController::sync(double p) {
    int n = 0;
    while (crossed_boundary(p)) {
        advance_period();
        ++n;
    }
    return n;
}

double SpatialRepetitiveController::feedforward(double p) const {
    return previous_.mean(wrap_position(p, cfg_.period));
}

bool SpatialRepetitiveController::record_observation(double learning, double p, double velocity) {
    if (!std::isfinite(learning) || !std::isfinite(p) || !std::isfinite(velocity)) {
        std::ostringstream os;
        os << "spatial RC: non-finite observation (learning " << learning << ", position " << p << ", velocity "
           << velocity << ")";
        throw SimulationAbort(os.str());
    }
    const double shifted = p - cfg_.preview * velocity * cfg_.ts;
    if (shifted < completed_ * cfg_.period) return false;

    ++counter_;
    if (counter_ % static_cast<std::size_t>(cfg_.downsample) != 0) return false;

    const double pt = wrap_position(shifted, cfg_.period);
    last_wrapped_ = pt;
    buf_positions_.push_back(pt);
    buf_targets_.push_back(learning + previous_.mean(pt));
    return true;
}

double BackwardDifferenceVelocity::update(double p) {
    const double v = last_ ? (p - *last_) / ts_ : initial_;
    last_ = p;
    return v;
}

} // namespace gprc
