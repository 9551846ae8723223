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

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "gprc/errors.hpp"
#include "gprc/gp/periodic_kernel.hpp"

namespace gprc {

/**
 * Fitted zero-mean Gaussian process with the periodic kernel.
 *
 * Holds the training set, the weight vector
 *
 *   alpha = (K + sigma^2 I)^-1 targets
 *
 * and the Cholesky factor of K + sigma^2 I for variance queries. sigma^2
 * is sigma_n^2 plus whatever jitter the fit needed. Immutable after fit;
 * queries are const and thread-safe.
 */
template<typename Scalar>
class GpModel {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    /// Empty model: zero mean, prior variance.
    explicit GpModel(KernelHyper<Scalar> hyper = {}) : hyper_(hyper) { hyper_.validate(); }

    const KernelHyper<Scalar>& hyper() const { return hyper_; }
    const Vector& positions() const { return positions_; }
    const Vector& targets() const { return targets_; }
    const Vector& alpha() const { return alpha_; }
    Eigen::Index size() const { return positions_.size(); }
    bool empty() const { return positions_.size() == 0; }
    /// Diagonal jitter added on top of sigma_n^2 to make the fit succeed.
    Scalar jitter() const { return jitter_; }
    Scalar effective_noise_variance() const { return hyper_.sigma_n * hyper_.sigma_n + jitter_; }

    /// Posterior mean, sum_i alpha_i k(p_i, p). O(N).
    Scalar mean(Scalar p) const {
        Scalar acc(0);
        for (Eigen::Index i = 0; i < positions_.size(); ++i) acc += alpha_(i) * periodic_kernel(positions_(i), p, hyper_);
        return acc;
    }

    /// Posterior variance k(p,p) - k*^T (K + sigma^2 I)^-1 k*, clamped to
    /// [0, sigma_f^2].
    Scalar variance(Scalar p) const {
        const Scalar prior = periodic_kernel(p, p, hyper_);
        if (empty()) return prior;
        Vector ks(size());
        for (Eigen::Index i = 0; i < size(); ++i) ks(i) = periodic_kernel(positions_(i), p, hyper_);
        const Vector v = llt_.matrixL().solve(ks);
        return std::clamp(prior - v.squaredNorm(), Scalar(0), prior);
    }

    /// Gram matrix K (without the noise diagonal) of the training positions.
    static Matrix gram(const Vector& positions, const KernelHyper<Scalar>& h) {
        const Eigen::Index n = positions.size();
        Matrix K(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            K(i, i) = h.sigma_f * h.sigma_f;
            for (Eigen::Index j = 0; j < i; ++j) K(i, j) = K(j, i) = periodic_kernel(positions(i), positions(j), h);
        }
        return K;
    }

    template<typename S>
    friend GpModel<S> fit(std::span<const S>, std::span<const S>, const KernelHyper<S>&);

private:
    KernelHyper<Scalar> hyper_;
    Vector positions_;
    Vector targets_;
    Vector alpha_;
    Eigen::LLT<Matrix> llt_;
    Scalar jitter_{0};
};

using GpModeld = GpModel<double>;

/**
 * Regularized fit by Cholesky solve of (K + sigma_n^2 I) alpha = targets.
 *
 * Near-duplicate training positions with a tiny sigma_n make the Gram
 * matrix numerically singular. Each attempt is accepted only if the
 * factorization succeeds and the solve residual is below 1e-8 ||targets||;
 * otherwise jitter 1e-10, 1e-8, 1e-6 is added to the diagonal in turn.
 */
template<typename Scalar>
GpModel<Scalar> fit(std::span<const Scalar> positions, std::span<const Scalar> targets, const KernelHyper<Scalar>& hyper) {
    if (positions.size() != targets.size()) {
        std::ostringstream os;
        os << "gp fit: " << positions.size() << " positions but " << targets.size() << " targets";
        throw std::invalid_argument(os.str());
    }
    GpModel<Scalar> model(hyper);
    const auto n = static_cast<Eigen::Index>(positions.size());
    if (n == 0) return model;

    using Vector = typename GpModel<Scalar>::Vector;
    using Matrix = typename GpModel<Scalar>::Matrix;
    model.positions_ = Eigen::Map<const Vector>(positions.data(), n);
    model.targets_ = Eigen::Map<const Vector>(targets.data(), n);
    if (!model.positions_.allFinite() || !model.targets_.allFinite())
        throw std::invalid_argument("gp fit: non-finite training data");

    const Matrix K = GpModel<Scalar>::gram(model.positions_, hyper);
    const Scalar base = hyper.sigma_n * hyper.sigma_n;
    const Scalar target_norm = model.targets_.norm();
    constexpr std::array<double, 4> jitters{0.0, 1e-10, 1e-8, 1e-6};
    for (double j : jitters) {
        const Scalar jitter = static_cast<Scalar>(j);
        Matrix Ky = K;
        Ky.diagonal().array() += base + jitter;
        model.llt_.compute(Ky);
        if (model.llt_.info() != Eigen::Success) continue;
        model.alpha_ = model.llt_.solve(model.targets_);
        const Scalar residual = (Ky * model.alpha_ - model.targets_).norm();
        if (model.alpha_.allFinite() && residual <= Scalar(1e-8) * target_norm) {
            model.jitter_ = jitter;
            return model;
        }
    }
    std::ostringstream os;
    os << "gp fit: K + sigma_n^2 I is not numerically positive definite for " << n
       << " training points even with diagonal jitter 1e-6 (ill-conditioned Gram matrix; "
          "increase sigma_n or the downsampling factor)";
    throw GpFitError(os.str());
}

template<typename Scalar>
GpModel<Scalar> fit(const std::vector<Scalar>& positions, const std::vector<Scalar>& targets, const KernelHyper<Scalar>& hyper) {
    return fit(std::span<const Scalar>(positions), std::span<const Scalar>(targets), hyper);
}

template<typename Scalar>
Scalar posterior_mean(const GpModel<Scalar>& m, Scalar p) { return m.mean(p); }

template<typename Scalar>
Scalar posterior_variance(const GpModel<Scalar>& m, Scalar p) { return m.variance(p); }

} // namespace gprc
