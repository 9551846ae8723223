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

#include "gprc/baseline_rc.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gprc/errors.hpp"

namespace gprc {

TraditionalRepetitiveController::TraditionalRepetitiveController(std::size_t period_samples,
                                                                 const NonCausalFilter& learning,
                                                                 std::vector<double> q_taps)
    : buffer_(period_samples, 0.0), learning_(learning.causal()), preview_(learning.preview()), q_(std::move(q_taps)) {
    learning_.reset();
    if (q_.empty()) q_ = {1.0};
    if (q_.size() % 2 == 0) throw std::invalid_argument("traditional RC: Q taps must have odd length");
    for (std::size_t i = 0; i < q_.size(); ++i) {
        if (std::abs(q_[i] - q_[q_.size() - 1 - i]) > 1e-12) throw std::invalid_argument("traditional RC: Q taps must be symmetric");
    }
    const auto half = static_cast<int>(q_.size() / 2);
    if (half > preview_)
        throw std::invalid_argument("traditional RC: Q half-width must not exceed the learning-filter preview");
    if (static_cast<std::size_t>(preview_ + half) >= period_samples)
        throw std::invalid_argument("traditional RC: period too short for learning preview and Q width");
}

double TraditionalRepetitiveController::step(double error) {
    if (!std::isfinite(error)) {
        std::ostringstream os;
        os << "traditional RC: non-finite error at sample " << k_;
        throw SimulationAbort(os.str());
    }
    const std::size_t n = buffer_.size();
    const auto half = static_cast<long>(q_.size() / 2);

    // Read before write: slots hold v(k - N) ... v(k - 1).
    double f = 0.0;
    if (k_ >= n) {
        for (long i = -half; i <= half; ++i) {
            const std::size_t slot = (index_ + static_cast<std::size_t>(preview_ + i)) % n;
            f += q_[static_cast<std::size_t>(i + half)] * buffer_[slot];
        }
    }
    buffer_[index_] += learning_.step(error);
    index_ = (index_ + 1) % n;
    ++k_;
    return f;
}

} // namespace gprc
