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
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "gprc/errors.hpp"
#include "gprc/lti/transfer_function.hpp"

namespace gprc {

template<typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template<typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template<typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/// Matrices of a SISO state-space model, without sample time or state.
template<typename Scalar>
struct SsMatrices {
    MatrixX<Scalar> A;
    VectorX<Scalar> B;
    RowVectorX<Scalar> C;
    Scalar D{0};
};

/**
 * Discrete-time SISO state-space system with internal state.
 *
 *   x(k+1) = A x(k) + B u(k)
 *   y(k)   = C x(k) + D u(k)
 *
 * A zero-order system (n = 0) is a static gain D. step() refuses
 * non-finite input and aborts if the state stops being finite.
 */
template<typename Scalar>
class DiscreteStateSpace {
public:
    DiscreteStateSpace() : DiscreteStateSpace(SsMatrices<Scalar>{MatrixX<Scalar>(0, 0), VectorX<Scalar>(0), RowVectorX<Scalar>(0), Scalar(1)}, Scalar(1)) {}

    DiscreteStateSpace(SsMatrices<Scalar> m, Scalar ts) : m_(std::move(m)), ts_(ts) {
        const auto n = m_.A.rows();
        if (m_.A.cols() != n || m_.B.size() != n || m_.C.size() != n)
            throw std::invalid_argument("DiscreteStateSpace: inconsistent dimensions");
        if (!(ts > Scalar(0))) throw std::invalid_argument("DiscreteStateSpace: sample time must be positive");
        if (!m_.A.allFinite() || !m_.B.allFinite() || !m_.C.allFinite() || !std::isfinite(m_.D))
            throw std::invalid_argument("DiscreteStateSpace: non-finite matrix entry");
        x_ = VectorX<Scalar>::Zero(n);
    }

    DiscreteStateSpace(MatrixX<Scalar> A, VectorX<Scalar> B, RowVectorX<Scalar> C, Scalar D, Scalar ts)
        : DiscreteStateSpace(SsMatrices<Scalar>{std::move(A), std::move(B), std::move(C), D}, ts) {}

    static DiscreteStateSpace gain(Scalar d, Scalar ts) {
        return DiscreteStateSpace(MatrixX<Scalar>(0, 0), VectorX<Scalar>(0), RowVectorX<Scalar>(0), d, ts);
    }

    const MatrixX<Scalar>& A() const { return m_.A; }
    const VectorX<Scalar>& B() const { return m_.B; }
    const RowVectorX<Scalar>& C() const { return m_.C; }
    Scalar D() const { return m_.D; }
    const SsMatrices<Scalar>& matrices() const { return m_; }
    Scalar ts() const { return ts_; }
    Eigen::Index order() const { return m_.A.rows(); }

    const VectorX<Scalar>& state() const { return x_; }
    void set_state(const VectorX<Scalar>& x) {
        if (x.size() != order()) throw std::invalid_argument("DiscreteStateSpace: state size mismatch");
        x_ = x;
    }
    void reset() { x_.setZero(); }

    /// Output for input u at the current state, without advancing.
    Scalar output(Scalar u) const { return m_.C.dot(x_) + m_.D * u; }

    /// Returns y(k) = C x(k) + D u(k) and advances the state to x(k+1).
    Scalar step(Scalar u) {
        if (!std::isfinite(u)) {
            std::ostringstream os;
            os << "DiscreteStateSpace::step: non-finite input " << u;
            throw SimulationAbort(os.str());
        }
        const Scalar y = output(u);
        if (order() > 0) {
            x_ = m_.A * x_ + m_.B * u;
            if (!x_.allFinite()) throw SimulationAbort("DiscreteStateSpace::step: state diverged to non-finite values");
        }
        return y;
    }

    ComplexVector<Scalar> poles() const {
        if (order() == 0) return ComplexVector<Scalar>(0);
        return Eigen::EigenSolver<MatrixX<Scalar>>(m_.A, false).eigenvalues();
    }

    Scalar spectral_radius() const {
        const auto p = poles();
        return p.size() == 0 ? Scalar(0) : p.cwiseAbs().maxCoeff();
    }

private:
    SsMatrices<Scalar> m_;
    Scalar ts_;
    VectorX<Scalar> x_;
};

using DiscreteStateSpaced = DiscreteStateSpace<double>;

/// Controllable canonical form of num/den (descending coefficients, proper).
template<typename Scalar>
SsMatrices<Scalar> canonical_realization(const Poly<Scalar>& num_in, const Poly<Scalar>& den_in) {
    const Poly<Scalar> den = poly_trim(den_in);
    const Eigen::Index n = den.size() - 1;
    Poly<Scalar> num = Poly<Scalar>::Zero(n + 1);
    const Poly<Scalar> nt = poly_trim(num_in);
    if (nt.size() > n + 1) throw std::invalid_argument("canonical_realization: improper");
    num.tail(nt.size()) = nt;
    const Scalar a0 = den(0);
    const Poly<Scalar> a = den / a0;
    const Poly<Scalar> b = num / a0;

    SsMatrices<Scalar> m;
    m.D = b(0);
    m.A = MatrixX<Scalar>::Zero(n, n);
    m.B = VectorX<Scalar>::Zero(n);
    m.C = RowVectorX<Scalar>::Zero(n);
    if (n > 0) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m.A(0, j) = -a(j + 1);
            m.C(j) = b(j + 1) - m.D * a(j + 1);
        }
        for (Eigen::Index i = 1; i < n; ++i) m.A(i, i - 1) = Scalar(1);
        m.B(0) = Scalar(1);
    }
    return m;
}

template<typename Scalar>
DiscreteStateSpace<Scalar> realize(const DiscreteTf<Scalar>& tf) {
    return DiscreteStateSpace<Scalar>(canonical_realization(tf.num(), tf.den()), tf.ts());
}

/**
 * Transfer-function coefficients of a state-space model via the
 * Faddeev-LeVerrier recursion, which yields the characteristic polynomial
 * and the adjugate of (zI - A) without root finding:
 *
 *   adj(zI - A) = sum_k N_k z^(n-1-k),  N_0 = I,  N_k = A N_(k-1) + a_k I
 *   a_k = -tr(A N_(k-1)) / k
 *
 * Suitable for the low orders handled here (n <= ~10).
 */
template<typename Scalar>
std::pair<Poly<Scalar>, Poly<Scalar>> ss_to_poly(const SsMatrices<Scalar>& m) {
    const Eigen::Index n = m.A.rows();
    Poly<Scalar> a = Poly<Scalar>::Zero(n + 1);
    a(0) = Scalar(1);
    Poly<Scalar> num = Poly<Scalar>::Zero(n + 1);
    MatrixX<Scalar> N = MatrixX<Scalar>::Identity(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        num(k) = m.C * N * m.B;
        const MatrixX<Scalar> AN = m.A * N;
        a(k) = -AN.trace() / Scalar(k);
        N = AN + a(k) * MatrixX<Scalar>::Identity(n, n);
    }
    num += m.D * a;
    return {num, a};
}

template<typename Scalar>
DiscreteTf<Scalar> to_tf(const DiscreteStateSpace<Scalar>& sys) {
    auto [num, den] = ss_to_poly(sys.matrices());
    // Leading numerator entries that are pure round-off of an exact zero.
    return DiscreteTf<Scalar>(poly_trim(num, Scalar(64) * std::numeric_limits<Scalar>::epsilon()), den, sys.ts());
}

} // namespace gprc
