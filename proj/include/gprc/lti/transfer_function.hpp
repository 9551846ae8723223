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
#include <complex>
#include <numbers>
#include <stdexcept>

#include "gprc/lti/polynomial.hpp"

namespace gprc {

namespace detail {

template<typename Scalar>
void check_rational(const Poly<Scalar>& num, const Poly<Scalar>& den, const char* who) {
    if (!num.allFinite() || !den.allFinite())
        throw std::invalid_argument(std::string(who) + ": non-finite coefficient");
    if (poly_degree(den) < 0)
        throw std::invalid_argument(std::string(who) + ": zero denominator");
    if (poly_degree(num) > poly_degree(den))
        throw std::invalid_argument(std::string(who) + ": improper (numerator degree exceeds denominator degree)");
}

} // namespace detail

/// SISO rational transfer function in the Laplace variable s.
template<typename Scalar>
class ContinuousTf {
public:
    ContinuousTf(Poly<Scalar> num, Poly<Scalar> den) {
        detail::check_rational(num, den, "ContinuousTf");
        num_ = poly_trim(num);
        den_ = poly_trim(den);
    }

    const Poly<Scalar>& num() const { return num_; }
    const Poly<Scalar>& den() const { return den_; }
    Eigen::Index order() const { return den_.size() - 1; }
    Eigen::Index relative_degree() const { return poly_degree(den_) - poly_degree(num_); }

    std::complex<Scalar> operator()(std::complex<Scalar> s) const {
        return poly_eval(num_, s) / poly_eval(den_, s);
    }

    /// Value at s = 0; infinite for a pole at the origin.
    Scalar dc_gain() const { return num_(num_.size() - 1) / den_(den_.size() - 1); }

    ComplexVector<Scalar> poles() const { return poly_roots(den_); }
    ComplexVector<Scalar> zeros() const { return poly_roots(num_); }

private:
    Poly<Scalar> num_;
    Poly<Scalar> den_;
};

/// SISO rational transfer function in z with sample time ts.
template<typename Scalar>
class DiscreteTf {
public:
    DiscreteTf(Poly<Scalar> num, Poly<Scalar> den, Scalar ts) : ts_(ts) {
        detail::check_rational(num, den, "DiscreteTf");
        if (!(ts > Scalar(0))) throw std::invalid_argument("DiscreteTf: sample time must be positive");
        num_ = poly_trim(num);
        den_ = poly_trim(den);
    }

    const Poly<Scalar>& num() const { return num_; }
    const Poly<Scalar>& den() const { return den_; }
    Scalar ts() const { return ts_; }
    Eigen::Index order() const { return den_.size() - 1; }
    Eigen::Index relative_degree() const { return poly_degree(den_) - poly_degree(num_); }

    std::complex<Scalar> operator()(std::complex<Scalar> z) const {
        return poly_eval(num_, z) / poly_eval(den_, z);
    }

    /// Frequency response at f Hz, z = exp(j 2 pi f ts).
    std::complex<Scalar> at_hz(Scalar f) const {
        return (*this)(std::polar(Scalar(1), Scalar(2) * std::numbers::pi_v<Scalar> * f * ts_));
    }

    Scalar dc_gain() const { return poly_eval(num_, Scalar(1)) / poly_eval(den_, Scalar(1)); }

    ComplexVector<Scalar> poles() const { return poly_roots(den_); }
    ComplexVector<Scalar> zeros() const { return poly_roots(num_); }

private:
    Poly<Scalar> num_;
    Poly<Scalar> den_;
    Scalar ts_;
};

template<typename Scalar>
DiscreteTf<Scalar> operator*(const DiscreteTf<Scalar>& a, const DiscreteTf<Scalar>& b) {
    return {poly_mul(a.num(), b.num()), poly_mul(a.den(), b.den()), a.ts()};
}

using ContinuousTfd = ContinuousTf<double>;
using DiscreteTfd = DiscreteTf<double>;

} // namespace gprc
