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
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

// Polynomials are stored as coefficient vectors in descending powers,
// i.e. c(0) x^n + c(1) x^(n-1) + ... + c(n).

namespace gprc {

template<typename Scalar>
using Poly = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template<typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template<typename Scalar>
Poly<Scalar> make_poly(std::initializer_list<Scalar> coeffs) {
    Poly<Scalar> p(static_cast<Eigen::Index>(coeffs.size()));
    Eigen::Index i = 0;
    for (Scalar c : coeffs) p(i++) = c;
    return p;
}

/// Degree of p, ignoring exactly-zero leading coefficients. The zero
/// polynomial has degree -1.
template<typename Scalar>
Eigen::Index poly_degree(const Poly<Scalar>& p) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) != Scalar(0)) return p.size() - 1 - i;
    }
    return -1;
}

/// Drops leading coefficients whose magnitude is at most rel_tol times the
/// largest coefficient. Always keeps at least one coefficient.
template<typename Scalar>
Poly<Scalar> poly_trim(const Poly<Scalar>& p, Scalar rel_tol = Scalar(0)) {
    if (p.size() == 0) return Poly<Scalar>::Zero(1);
    const Scalar scale = p.cwiseAbs().maxCoeff();
    Eigen::Index first = 0;
    while (first < p.size() - 1 && std::abs(p(first)) <= rel_tol * scale) ++first;
    return p.tail(p.size() - first);
}

template<typename Scalar>
Poly<Scalar> poly_mul(const Poly<Scalar>& a, const Poly<Scalar>& b) {
    if (a.size() == 0 || b.size() == 0) return Poly<Scalar>::Zero(1);
    Poly<Scalar> r = Poly<Scalar>::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) r(i + j) += a(i) * b(j);
    return r;
}

/// Sum with the coefficient vectors aligned on the constant term.
template<typename Scalar>
Poly<Scalar> poly_add(const Poly<Scalar>& a, const Poly<Scalar>& b) {
    const Eigen::Index n = std::max(a.size(), b.size());
    Poly<Scalar> r = Poly<Scalar>::Zero(n);
    r.tail(a.size()) += a;
    r.tail(b.size()) += b;
    return r;
}

template<typename Scalar>
Poly<Scalar> poly_scale(const Poly<Scalar>& a, Scalar s) {
    return a * s;
}

/// Horner evaluation at a complex point.
template<typename Scalar>
std::complex<Scalar> poly_eval(const Poly<Scalar>& p, std::complex<Scalar> x) {
    std::complex<Scalar> acc(0);
    for (Eigen::Index i = 0; i < p.size(); ++i) acc = acc * x + p(i);
    return acc;
}

template<typename Scalar>
Scalar poly_eval(const Poly<Scalar>& p, Scalar x) {
    Scalar acc(0);
    for (Eigen::Index i = 0; i < p.size(); ++i) acc = acc * x + p(i);
    return acc;
}

/// (x + 1)^n or (x - 1)^n, used for bilinear substitution.
template<typename Scalar>
Poly<Scalar> poly_binomial(Eigen::Index n, Scalar sign) {
    Poly<Scalar> r = Poly<Scalar>::Ones(1);
    const Poly<Scalar> factor = make_poly<Scalar>({Scalar(1), sign});
    for (Eigen::Index i = 0; i < n; ++i) r = poly_mul(r, factor);
    return r;
}

/// Roots via eigenvalues of the companion matrix.
template<typename Scalar>
ComplexVector<Scalar> poly_roots(const Poly<Scalar>& p_in) {
    const Poly<Scalar> p = poly_trim(p_in);
    const Eigen::Index n = p.size() - 1;
    if (n <= 0) return ComplexVector<Scalar>(0);
    if (p(0) == Scalar(0)) throw std::invalid_argument("poly_roots: zero polynomial");
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> companion =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) companion(0, j) = -p(j + 1) / p(0);
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = Scalar(1);
    Eigen::EigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> solver(companion, false);
    return solver.eigenvalues();
}

/// Monic real polynomial with the given roots. Complex roots must come in
/// conjugate pairs; the residual imaginary parts are discarded.
template<typename Scalar>
Poly<Scalar> poly_from_roots(const ComplexVector<Scalar>& roots) {
    ComplexVector<Scalar> c = ComplexVector<Scalar>::Zero(roots.size() + 1);
    c(0) = 1;
    for (Eigen::Index k = 0; k < roots.size(); ++k) {
        for (Eigen::Index i = k + 1; i >= 1; --i) c(i) -= roots(k) * c(i - 1);
    }
    return c.real();
}

} // namespace gprc
