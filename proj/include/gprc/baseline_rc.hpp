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
#include <vector>

#include "gprc/loop_design.hpp"

namespace gprc {

/**
 * Traditional repetitive controller with a fixed-length memory loop.
 *
 *   w(k) = w(k - N) + L[e](k)
 *   f(k) = Q[w](k - N)
 *
 * L has preview n_l. Running its causal part gives l_c(k) = l(k - n_l),
 * so the buffer holds v(k) = w(k - n_l) and the output reads v n_l
 * samples ahead of the usual delay tap: f(k) = v(k - N + n_l). Q is an
 * optional symmetric FIR read around that tap, so it adds no phase. The
 * output is held at zero for the first N samples.
 */
class TraditionalRepetitiveController {
public:
    /// q_taps must have odd length and be symmetric; empty means Q = 1.
    TraditionalRepetitiveController(std::size_t period_samples, const NonCausalFilter& learning,
                                    std::vector<double> q_taps = {});

    /// Consumes e(k), returns f(k). f(k) does not depend on e(k).
    double step(double error);

    std::size_t period_samples() const { return buffer_.size(); }
    std::size_t write_index() const { return index_; }
    std::size_t samples_seen() const { return k_; }
    int preview() const { return preview_; }

private:
    std::vector<double> buffer_;
    DiscreteStateSpaced learning_;
    int preview_;
    std::vector<double> q_;
    std::size_t index_ = 0;
    std::size_t k_ = 0;
};

} // namespace gprc
