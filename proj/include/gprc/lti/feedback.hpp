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
#include <stdexcept>

#include "gprc/errors.hpp"
#include "gprc/lti/state_space.hpp"

namespace gprc {

/// Closed-loop maps of the unity negative-feedback loop e = r - y,
/// u = C e + w, y = P u.
template<typename Scalar>
struct ClosedLoop {
    DiscreteStateSpace<Scalar> sensitivity;                 ///< S  = 1/(1+CP), r -> e
    DiscreteStateSpace<Scalar> process_sensitivity;         ///< PS = P/(1+CP), w -> y
    DiscreteStateSpace<Scalar> complementary_sensitivity;   ///< T  = CP/(1+CP), r -> y
};

/**
 * Interconnects plant and controller. The joint state is [x_plant; x_ctrl].
 * With delta = 1 + Dp Dc the loop output solves to
 *
 *   y = (Cp xp + Dp Cc xc + Dp Dc r + Dp w) / delta
 *
 * and the three maps share the same closed-loop A matrix. Throws
 * DesignError for an algebraic loop (delta == 0).
 */
template<typename Scalar>
ClosedLoop<Scalar> connect_feedback(const DiscreteStateSpace<Scalar>& plant, const DiscreteStateSpace<Scalar>& ctrl) {
    if (std::abs(plant.ts() - ctrl.ts()) > Scalar(1e-12) * plant.ts())
        throw std::invalid_argument("connect_feedback: sample times differ");
    const Scalar delta = Scalar(1) + plant.D() * ctrl.D();
    if (std::abs(delta) < Scalar(1e-12)) throw DesignError("connect_feedback: ill-posed loop, 1 + Dc Dp = 0");

    const Eigen::Index np = plant.order(), nc = ctrl.order(), n = np + nc;
    const auto& Ap = plant.A(); const auto& Bp = plant.B(); const auto& Cp = plant.C(); const Scalar Dp = plant.D();
    const auto& Ac = ctrl.A();  const auto& Bc = ctrl.B();  const auto& Cc = ctrl.C();  const Scalar Dc = ctrl.D();

    // y = Cy x + Dyr r + Dyw w
    RowVectorX<Scalar> Cy(n);
    Cy << Cp / delta, Dp * Cc / delta;
    const Scalar Dyr = Dp * Dc / delta;
    const Scalar Dyw = Dp / delta;
    // e = r - y
    const RowVectorX<Scalar> Ce = -Cy;
    const Scalar Der = Scalar(1) - Dyr, Dew = -Dyw;
    // u = Cc xc + Dc e + w
    RowVectorX<Scalar> Cu = Dc * Ce;
    Cu.tail(nc) += Cc;
    const Scalar Dur = Dc * Der, Duw = Dc * Dew + Scalar(1);

    MatrixX<Scalar> A = MatrixX<Scalar>::Zero(n, n);
    A.topLeftCorner(np, np) = Ap;
    A.topRows(np) += Bp * Cu;
    A.bottomRightCorner(nc, nc) = Ac;
    A.bottomRows(nc) += Bc * Ce;

    VectorX<Scalar> Br(n), Bw(n);
    Br << Bp * Dur, Bc * Der;
    Bw << Bp * Duw, Bc * Dew;

    const Scalar ts = plant.ts();
    return ClosedLoop<Scalar>{
        DiscreteStateSpace<Scalar>(A, Br, Ce, Der, ts),
        DiscreteStateSpace<Scalar>(A, Bw, Cy, Dyw, ts),
        DiscreteStateSpace<Scalar>(A, Br, Cy, Dyr, ts),
    };
}

} // namespace gprc
