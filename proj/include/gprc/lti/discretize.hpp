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

#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "gprc/lti/state_space.hpp"

namespace gprc {

/**
 * Exact zero-order-hold equivalent of a continuous transfer function.
 *
 * The continuous model is put in controllable canonical form and the
 * augmented matrix
 *
 *   M = [A B; 0 0] ts,   exp(M) = [Ad Bd; 0 1]
 *
 * yields Ad and Bd in one Pade scaling-and-squaring exponential. C and D
 * carry over unchanged. Discrete poles are exp(s_i ts).
 */
template<typename Scalar>
DiscreteStateSpace<Scalar> zoh_discretize(const ContinuousTf<Scalar>& sys, Scalar ts) {
    if (!(ts > Scalar(0))) throw std::invalid_argument("zoh_discretize: sample time must be positive");
    const SsMatrices<Scalar> c = canonical_realization(sys.num(), sys.den());
    const Eigen::Index n = c.A.rows();
    if (n == 0) return DiscreteStateSpace<Scalar>::gain(c.D, ts);

    MatrixX<Scalar> M = MatrixX<Scalar>::Zero(n + 1, n + 1);
    M.topLeftCorner(n, n) = c.A * ts;
    M.topRightCorner(n, 1) = c.B * ts;
    const MatrixX<Scalar> E = M.exp();

    SsMatrices<Scalar> d;
    d.A = E.topLeftCorner(n, n);
    d.B = E.topRightCorner(n, 1);
    d.C = c.C;
    d.D = c.D;
    return DiscreteStateSpace<Scalar>(std::move(d), ts);
}

/**
 * Bilinear (Tustin) map s = (2/ts) (z - 1)/(z + 1), carried out on the
 * polynomial coefficients. A term b_i s^i of an order-n rational becomes
 * b_i (2/ts)^i (z - 1)^i (z + 1)^(n - i).
 */
template<typename Scalar>
DiscreteTf<Scalar> tustin_discretize(const ContinuousTf<Scalar>& sys, Scalar ts) {
    if (!(ts > Scalar(0))) throw std::invalid_argument("tustin_discretize: sample time must be positive");
    const Eigen::Index n = sys.order();
    auto map_poly = [&](const Poly<Scalar>& p) {
        Poly<Scalar> out = Poly<Scalar>::Zero(n + 1);
        const Eigen::Index deg = p.size() - 1;
        for (Eigen::Index k = 0; k <= deg; ++k) {
            const Eigen::Index power = deg - k; // coefficient p(k) multiplies s^power
            const Poly<Scalar> term = poly_mul(poly_binomial<Scalar>(power, Scalar(-1)),
                                               poly_binomial<Scalar>(n - power, Scalar(1)));
            out = poly_add(out, Poly<Scalar>(term * (p(k) * std::pow(Scalar(2) / ts, Scalar(power)))));
        }
        return out;
    };
    return DiscreteTf<Scalar>(map_poly(sys.num()), map_poly(sys.den()), ts);
}

} // namespace gprc
