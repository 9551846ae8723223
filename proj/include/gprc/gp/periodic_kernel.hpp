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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gprc {

/// Hyper-parameters of the periodic (exp-sine-squared) kernel.
template<typename Scalar>
struct KernelHyper {
    Scalar sigma_f{1};       ///< signal scale, output units
    Scalar sigma_n{1e-6};    ///< observation noise scale, output units
    Scalar period{2 * std::numbers::pi_v<Scalar>}; ///< lambda, position units
    Scalar length_scale{0.1}; ///< relative to the period phase

    void validate() const {
        auto bad = [](const char* field, const char* rule) {
            throw std::invalid_argument(std::string("KernelHyper: ") + field + " must be " + rule);
        };
        if (!(sigma_f > 0) || !std::isfinite(sigma_f)) bad("sigma_f", "finite and > 0");
        if (!(sigma_n >= 0) || !std::isfinite(sigma_n)) bad("sigma_n", "finite and >= 0");
        if (!(period > 0) || !std::isfinite(period)) bad("period", "finite and > 0");
        if (!(length_scale > 0) || !std::isfinite(length_scale)) bad("length_scale", "finite and > 0");
    }
};

using KernelHyperd = KernelHyper<double>;

/**
 * k(p, q) = sigma_f^2 exp(-2 sin^2(pi (p - q) / period) / l^2)
 *
 * Exactly period-periodic in the lag and symmetric in its arguments
 * (sin is odd and the square removes the sign).
 */
template<typename Scalar>
inline Scalar periodic_kernel(Scalar p, Scalar q, const KernelHyper<Scalar>& h) {
    const Scalar s = std::sin(std::numbers::pi_v<Scalar> * (p - q) / h.period);
    return h.sigma_f * h.sigma_f * std::exp(Scalar(-2) * s * s / (h.length_scale * h.length_scale));
}

} // namespace gprc
