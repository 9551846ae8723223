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

#include "gprc/loop_design.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gprc/errors.hpp"

namespace gprc {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_degrees(double deg) {
    deg = std::fmod(deg, 360.0);
    if (deg <= -180.0) deg += 360.0;
    if (deg > 180.0) deg -= 360.0;
    return deg;
}

std::string describe(const LoopMargins& m) {
    std::ostringstream os;
    os << "crossover " << m.crossover_hz << " Hz, phase margin " << m.phase_margin_deg << " deg, gain margin "
       << m.gain_margin_db << " dB, closed-loop spectral radius " << m.closed_loop_spectral_radius;
    return os.str();
}

} // namespace

void LoopShapeSpec::validate(double ts) const {
    auto bad = [](const std::string& msg) { throw std::invalid_argument("LoopShapeSpec: " + msg); };
    const double nyquist = 0.5 / ts;
    if (!(crossover_hz > 0.0) || !std::isfinite(crossover_hz)) bad("crossover_hz must be > 0");
    if (crossover_hz >= nyquist) bad("crossover_hz must be below Nyquist");
    if (!(lead_ratio >= 1.0) || !std::isfinite(lead_ratio)) bad("lead_ratio must be >= 1");
    if (has_lead() && crossover_hz * lead_ratio >= nyquist) bad("lead pole must lie below Nyquist");
    if (lowpass_multiple < 0.0 || !std::isfinite(lowpass_multiple)) bad("lowpass_multiple must be >= 0");
    if (has_lowpass()) {
        if (!(lowpass_multiple > 1.0)) bad("low-pass corner must lie above the crossover");
        if (crossover_hz * lowpass_multiple >= nyquist) bad("low-pass corner must lie below Nyquist");
        if (!(lowpass_damping > 0.0) || !std::isfinite(lowpass_damping)) bad("lowpass_damping must be > 0");
    }
    if (!std::isfinite(min_phase_margin_deg)) bad("min_phase_margin_deg must be finite");
}

LoopMargins loop_margins(const DiscreteTfd& open_loop, double fallback_hz) {
    const double nyquist = 0.5 / open_loop.ts();
    const std::vector<double> grid = log_grid(1e-3, 0.999 * nyquist, 20000);
    auto log_mag = [&](double f) { return std::log(std::abs(open_loop.at_hz(f))); };

    LoopMargins m;
    m.crossover_hz = fallback_hz;
    m.gain_margin_db = std::numeric_limits<double>::infinity();
    double prev_mag = log_mag(grid.front());
    double prev_phase = std::arg(open_loop.at_hz(grid.front()));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const std::complex<double> v = open_loop.at_hz(grid[i]);
        const double mag = std::log(std::abs(v));
        if ((prev_mag > 0.0) != (mag > 0.0) && std::isfinite(prev_mag) && std::isfinite(mag)) {
            double lo = grid[i - 1], hi = grid[i];
            const bool rising = mag > prev_mag;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((log_mag(mid) > 0.0) == rising) hi = mid; else lo = mid;
            }
            m.crossover_hz = 0.5 * (lo + hi);
        }
        // -180 deg crossing: the phase jumps across the branch cut at +-pi.
        const double phase = std::arg(v);
        if (std::abs(phase - prev_phase) > kPi && v.real() < 0.0)
            m.gain_margin_db = std::min(m.gain_margin_db, -20.0 * std::log10(std::abs(v)));
        prev_mag = mag;
        prev_phase = phase;
    }
    m.phase_margin_deg = wrap_degrees(180.0 + std::arg(open_loop.at_hz(m.crossover_hz)) * 180.0 / kPi);
    return m;
}

LoopTfs closed_loop_tfs(const DiscreteTfd& plant, const DiscreteTfd& ctrl) {
    const double ts = plant.ts();
    const Poly<double> den = poly_add(poly_mul(plant.den(), ctrl.den()), poly_mul(plant.num(), ctrl.num()));
    return LoopTfs{
        DiscreteTfd(poly_mul(plant.den(), ctrl.den()), den, ts),
        DiscreteTfd(poly_mul(plant.num(), ctrl.den()), den, ts),
        DiscreteTfd(poly_mul(plant.num(), ctrl.num()), den, ts),
    };
}

FeedbackDesign design_feedback(const ContinuousTfd& plant, const LoopShapeSpec& spec, double ts) {
    const double nyquist = 0.5 / ts;
    if (spec.crossover_hz > nyquist / 3.0) {
        std::ostringstream os;
        os << "design_feedback: crossover " << spec.crossover_hz << " Hz exceeds Nyquist/3 = " << nyquist / 3.0
           << " Hz; sample faster or lower the bandwidth";
        throw DesignError(os.str());
    }
    spec.validate(ts);

    const double wc = 2.0 * kPi * spec.crossover_hz;
    Poly<double> num = make_poly<double>({1.0});
    Poly<double> den = make_poly<double>({1.0});
    if (spec.has_lead()) {
        const double wz = wc / spec.lead_ratio, wp = wc * spec.lead_ratio;
        num = poly_mul(num, make_poly<double>({1.0 / wz, 1.0}));
        den = poly_mul(den, make_poly<double>({1.0 / wp, 1.0}));
    }
    if (spec.has_lowpass()) {
        const double wl = wc * spec.lowpass_multiple;
        num = poly_mul(num, make_poly<double>({wl * wl}));
        den = poly_mul(den, make_poly<double>({1.0, 2.0 * spec.lowpass_damping * wl, wl * wl}));
    }
    const DiscreteTfd shape = tustin_discretize(ContinuousTfd(num, den), ts);
    const DiscreteTfd plant_d = to_tf(zoh_discretize(plant, ts));

    const double mag_at_wc = std::abs(shape.at_hz(spec.crossover_hz) * plant_d.at_hz(spec.crossover_hz));
    if (!(mag_at_wc > 0.0) || !std::isfinite(mag_at_wc))
        throw DesignError("design_feedback: loop gain at the crossover is zero or non-finite");
    const double gain = 1.0 / mag_at_wc;

    DiscreteTfd ctrl_tf(shape.num() * gain, shape.den(), ts);
    FeedbackDesign out{ctrl_tf, realize(ctrl_tf), gain, {}};
    out.margins = loop_margins(plant_d * ctrl_tf, spec.crossover_hz);
    const ClosedLoop<double> cl = connect_feedback(zoh_discretize(plant, ts), out.controller);
    out.margins.closed_loop_spectral_radius = cl.complementary_sensitivity.spectral_radius();

    if (!(out.margins.closed_loop_spectral_radius < 1.0))
        throw DesignError("design_feedback: closed loop unstable (" + describe(out.margins) + ")");
    if (out.margins.phase_margin_deg < spec.min_phase_margin_deg) {
        std::ostringstream os;
        os << "design_feedback: phase margin below " << spec.min_phase_margin_deg << " deg (" << describe(out.margins)
           << ")";
        throw DesignError(os.str());
    }
    return out;
}

NonCausalFilter::NonCausalFilter(DiscreteTfd causal, int preview, std::vector<std::complex<double>> reflected)
    : causal_tf_(std::move(causal)), causal_ss_(realize(causal_tf_)), preview_(preview), reflected_(std::move(reflected)) {
    if (preview_ < 0) throw std::invalid_argument("NonCausalFilter: preview must be >= 0");
}

std::complex<double> NonCausalFilter::at_hz(double f) const {
    const double w = 2.0 * kPi * f * ts();
    return std::polar(1.0, w * preview_) * causal_tf_.at_hz(f);
}

FrequencyResponse<double> NonCausalFilter::response(const std::vector<double>& freqs) const {
    FrequencyResponse<double> r = freq_response(causal_tf_, freqs);
    for (std::size_t i = 0; i < freqs.size(); ++i) r.values[i] *= std::polar(1.0, 2.0 * kPi * freqs[i] * ts() * preview_);
    return r;
}

std::vector<double> NonCausalFilter::apply(std::span<const double> x) const {
    DiscreteStateSpaced sys = causal_ss_;
    std::vector<double> out(x.size());
    const std::size_t lead = static_cast<std::size_t>(preview_);
    for (std::size_t k = 0; k < x.size() + lead; ++k) {
        const double y = sys.step(k < x.size() ? x[k] : 0.0);
        if (k >= lead) out[k - lead] = y;
    }
    return out;
}

NonCausalFilter stable_inverse(const DiscreteTfd& g, const InverseOptions& opts) {
    const Poly<double>& num = g.num();
    if (poly_degree(num) < 0) throw DesignError("stable_inverse: cannot invert the zero system");
    const double lead = num(0);
    const ComplexVector<double> zeros = poly_roots(num);

    ComplexVector<double> kept(zeros.size());
    std::vector<std::complex<double>> reflected;
    Eigen::Index nk = 0;
    for (Eigen::Index i = 0; i < zeros.size(); ++i) {
        if (std::abs(zeros(i)) < opts.zero_radius_limit) kept(nk++) = zeros(i);
        else reflected.push_back(zeros(i));
    }
    kept.conservativeResize(nk);

    // Reflected part: prod (1 - b z) / prod (1 - b)^2, as a polynomial in z.
    ComplexVector<double> refl_poly = ComplexVector<double>::Ones(1);
    std::complex<double> dc(1.0);
    for (const auto& b : reflected) {
        if (std::abs(1.0 - b) < 1e-9) throw DesignError("stable_inverse: zero at z = 1 has no zero-phase inverse");
        ComplexVector<double> next = ComplexVector<double>::Zero(refl_poly.size() + 1);
        next.head(refl_poly.size()) += -b * refl_poly;
        next.tail(refl_poly.size()) += refl_poly;
        refl_poly = next;
        dc *= (1.0 - b) * (1.0 - b);
    }
    const Poly<double> refl = refl_poly.real() / dc.real();

    const Poly<double> l_num = poly_mul(g.den(), refl);
    Poly<double> l_den = poly_from_roots(kept) * lead;
    const auto m = static_cast<Eigen::Index>(reflected.size());
    // z^m from the reflected factors plus z^preview for the causal shift.
    const Eigen::Index preview = g.relative_degree() + m;
    Poly<double> den_shifted = Poly<double>::Zero(l_den.size() + m + preview);
    den_shifted.head(l_den.size()) = l_den;

    NonCausalFilter out(DiscreteTfd(l_num, den_shifted, g.ts()), static_cast<int>(preview), std::move(reflected));
    if (!(out.causal().spectral_radius() < 1.0)) {
        std::ostringstream os;
        os << "stable_inverse: causal part unstable (spectral radius " << out.causal().spectral_radius()
           << "); lower zero_radius_limit";
        throw DesignError(os.str());
    }
    return out;
}

namespace {

std::pair<DiscreteTfd, DiscreteTfd> discrete_pair(const ContinuousTfd& plant_model, const DiscreteStateSpaced& ctrl,
                                                  double ts) {
    if (std::abs(ctrl.ts() - ts) > 1e-12 * ts) throw std::invalid_argument("learning filter: controller sample time mismatch");
    return {to_tf(zoh_discretize(plant_model, ts)), to_tf(ctrl)};
}

} // namespace

NonCausalFilter learning_filter_spatial(const ContinuousTfd& plant_model, const DiscreteStateSpaced& ctrl, double ts,
                                        const InverseOptions& opts) {
    const auto [p, c] = discrete_pair(plant_model, ctrl, ts);
    return stable_inverse(closed_loop_tfs(p, c).process_sensitivity, opts);
}

NonCausalFilter learning_filter_traditional(const ContinuousTfd& plant_model, const DiscreteStateSpaced& ctrl, double ts,
                                            const InverseOptions& opts) {
    const auto [p, c] = discrete_pair(plant_model, ctrl, ts);
    return stable_inverse(closed_loop_tfs(p, c).complementary_sensitivity, opts);
}

double inverse_error(const NonCausalFilter& l, const DiscreteTfd& g, const std::vector<double>& freqs) {
    double worst = 0.0;
    for (double f : freqs) worst = std::max(worst, std::abs(l.at_hz(f) * g.at_hz(f) - 1.0));
    return worst;
}

} // namespace gprc
