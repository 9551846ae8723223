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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gprc/lti/state_space.hpp"

namespace gprc {

/// Complex response sampled on a strictly increasing frequency grid (Hz).
template<typename Scalar>
struct FrequencyResponse {
    std::vector<Scalar> freqs_hz;
    std::vector<std::complex<Scalar>> values;

    std::size_t size() const { return freqs_hz.size(); }
};

namespace detail {

template<typename Scalar>
void check_grid(const std::vector<Scalar>& freqs, Scalar nyquist) {
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        if (!std::isfinite(freqs[i]) || freqs[i] < Scalar(0))
            throw std::invalid_argument("freq_response: frequencies must be finite and non-negative");
        if (i > 0 && !(freqs[i] > freqs[i - 1]))
            throw std::invalid_argument("freq_response: frequency grid must be strictly increasing");
        if (freqs[i] >= nyquist) throw std::invalid_argument("freq_response: frequency at or above Nyquist");
    }
}

} // namespace detail

/// Evaluates C (zI - A)^-1 B + D at z = exp(j 2 pi f ts).
template<typename Scalar>
std::complex<Scalar> evaluate(const DiscreteStateSpace<Scalar>& sys, std::complex<Scalar> z) {
    using Complex = std::complex<Scalar>;
    const Eigen::Index n = sys.order();
    if (n == 0) return Complex(sys.D());
    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> M =
        z * Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>::Identity(n, n) - sys.A().template cast<Complex>();
    const Eigen::Matrix<Complex, Eigen::Dynamic, 1> x = M.partialPivLu().solve(sys.B().template cast<Complex>());
    return (sys.C().template cast<Complex>() * x)(0) + Complex(sys.D());
}

template<typename Scalar>
FrequencyResponse<Scalar> freq_response(const DiscreteStateSpace<Scalar>& sys, const std::vector<Scalar>& freqs) {
    detail::check_grid(freqs, Scalar(0.5) / sys.ts());
    FrequencyResponse<Scalar> r{freqs, {}};
    r.values.reserve(freqs.size());
    for (Scalar f : freqs)
        r.values.push_back(evaluate(sys, std::polar(Scalar(1), Scalar(2) * std::numbers::pi_v<Scalar> * f * sys.ts())));
    return r;
}

template<typename Scalar>
FrequencyResponse<Scalar> freq_response(const DiscreteTf<Scalar>& sys, const std::vector<Scalar>& freqs) {
    detail::check_grid(freqs, Scalar(0.5) / sys.ts());
    FrequencyResponse<Scalar> r{freqs, {}};
    r.values.reserve(freqs.size());
    for (Scalar f : freqs) r.values.push_back(sys.at_hz(f));
    return r;
}

template<typename Scalar>
FrequencyResponse<Scalar> freq_response(const ContinuousTf<Scalar>& sys, const std::vector<Scalar>& freqs) {
    detail::check_grid(freqs, std::numeric_limits<Scalar>::infinity());
    FrequencyResponse<Scalar> r{freqs, {}};
    r.values.reserve(freqs.size());
    for (Scalar f : freqs) r.values.push_back(sys(std::complex<Scalar>(0, Scalar(2) * std::numbers::pi_v<Scalar> * f)));
    return r;
}

/// n points from lo to hi inclusive, linearly spaced.
template<typename Scalar>
std::vector<Scalar> linear_grid(Scalar lo, Scalar hi, std::size_t n) {
    std::vector<Scalar> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * Scalar(i) / Scalar(n - 1);
    return g;
}

/// n points from lo to hi inclusive, logarithmically spaced (lo > 0).
template<typename Scalar>
std::vector<Scalar> log_grid(Scalar lo, Scalar hi, std::size_t n) {
    std::vector<Scalar> g(n);
    const Scalar a = std::log10(lo), b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::pow(Scalar(10), n == 1 ? a : a + (b - a) * Scalar(i) / Scalar(n - 1));
    return g;
}

} // namespace gprc
