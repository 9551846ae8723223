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
#include <span>
#include <vector>

#include "gprc/lti.hpp"

namespace gprc {

/**
 * Structure of the stabilizing feedback controller
 *
 *   C(s) = K (s/wz + 1)/(s/wp + 1) * wl^2/(s^2 + 2 zeta wl s + wl^2)
 *
 * with wz = wc/lead_ratio, wp = wc*lead_ratio and wl = lowpass_multiple*wc.
 * lead_ratio = 1 drops the lead, lowpass_multiple = 0 drops the low-pass,
 * leaving a pure gain. K is solved so that |C P| = 1 at the crossover.
 */
struct LoopShapeSpec {
    double crossover_hz = 50.0;
    double lead_ratio = 4.0;
    double lowpass_multiple = 5.0;
    double lowpass_damping = 0.7;
    double min_phase_margin_deg = 30.0;

    bool has_lead() const { return lead_ratio > 1.0; }
    bool has_lowpass() const { return lowpass_multiple > 0.0; }
    /// Throws std::invalid_argument naming the offending field.
    void validate(double ts) const;
};

struct LoopMargins {
    double crossover_hz = 0.0;        ///< highest 0 dB crossing of |C P|
    double phase_margin_deg = 0.0;    ///< 180 + arg(C P) at the crossover
    double gain_margin_db = 0.0;      ///< +inf when the phase never reaches -180 deg
    double closed_loop_spectral_radius = 0.0;
};

struct FeedbackDesign {
    DiscreteTfd controller_tf;
    DiscreteStateSpaced controller;
    double gain = 0.0;
    LoopMargins margins;
};

/// Open-loop margins from a dense frequency sweep; the crossover is refined
/// by bisection. Falls back to fallback_hz when |L| never crosses 0 dB.
LoopMargins loop_margins(const DiscreteTfd& open_loop, double fallback_hz);

/// Closed-loop maps built from polynomials (the transfer-function route,
/// independent of the state-space interconnection in connect_feedback).
struct LoopTfs {
    DiscreteTfd sensitivity;
    DiscreteTfd process_sensitivity;
    DiscreteTfd complementary_sensitivity;
};
LoopTfs closed_loop_tfs(const DiscreteTfd& plant, const DiscreteTfd& ctrl);

/**
 * Designs the discrete feedback controller for a plant sampled with ts.
 * The plant is ZOH-discretized, the controller Tustin-discretized.
 *
 * Throws DesignError when the crossover is above Nyquist/3, the phase
 * margin falls short of spec.min_phase_margin_deg, or the closed loop is
 * unstable. The message carries the achieved margins.
 */
FeedbackDesign design_feedback(const ContinuousTfd& plant, const LoopShapeSpec& spec, double ts);

/// Learning filter with finite preview: L(z) = z^preview L_c(z).
class NonCausalFilter {
public:
    NonCausalFilter(DiscreteTfd causal, int preview, std::vector<std::complex<double>> reflected = {});

    const DiscreteTfd& causal_tf() const { return causal_tf_; }
    /// Causal part with zero state; copy it to obtain a stepping instance.
    const DiscreteStateSpaced& causal() const { return causal_ss_; }
    int preview() const { return preview_; }
    double ts() const { return causal_tf_.ts(); }
    /// Zeros of the inverted map that were reflected instead of cancelled.
    const std::vector<std::complex<double>>& reflected_zeros() const { return reflected_; }

    /// L at f Hz including the preview factor.
    std::complex<double> at_hz(double f) const;
    FrequencyResponse<double> response(const std::vector<double>& freqs) const;

    /// Offline non-causal filtering of a finite record (zero before and
    /// after): out[k] = (L_c x)[k + preview].
    std::vector<double> apply(std::span<const double> x) const;

private:
    DiscreteTfd causal_tf_;
    DiscreteStateSpaced causal_ss_;
    int preview_;
    std::vector<std::complex<double>> reflected_;
};

struct InverseOptions {
    /// Zeros with |z| >= limit are not cancelled but reflected with
    /// zero-phase-error compensation.
    double zero_radius_limit = 0.98;
};

/**
 * Stable approximate inverse of G = N/D in zero-phase-error tracking form.
 * N is split as g N_s N_u with N_s holding zeros inside the radius limit.
 * Each uncancellable zero b contributes (z^-1 - b)/(1 - b)^2 in place of
 * 1/(z - b), so L G carries the real, non-negative factor
 * |1 - b e^{jw}|^2 / (1 - b)^2 (unity at DC, no phase error).
 *
 * The preview is the relative degree of G plus the number of reflected
 * zeros. Throws DesignError for G == 0, a zero at z = 1, or an unstable
 * causal part.
 */
NonCausalFilter stable_inverse(const DiscreteTfd& g, const InverseOptions& opts = {});

/// L ~ PS^-1 for the spatial repetitive controller.
NonCausalFilter learning_filter_spatial(const ContinuousTfd& plant_model, const DiscreteStateSpaced& ctrl, double ts,
                                        const InverseOptions& opts = {});

/// L ~ T^-1 for the traditional repetitive controller.
NonCausalFilter learning_filter_traditional(const ContinuousTfd& plant_model, const DiscreteStateSpaced& ctrl, double ts,
                                            const InverseOptions& opts = {});

/// max |L(f) G(f) - 1| over the grid.
double inverse_error(const NonCausalFilter& l, const DiscreteTfd& g, const std::vector<double>& freqs);

} // namespace gprc
