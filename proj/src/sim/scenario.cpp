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

#include "gprc/sim/scenario.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gprc/errors.hpp"

namespace gprc {

std::string to_string(RcVariant v) {
    switch (v) {
    case RcVariant::None: return "none";
    case RcVariant::Traditional: return "traditional";
    case RcVariant::Spatial: return "spatial";
    case RcVariant::Both: return "both";
    }
    return "?";
}

std::string to_string(PositionMode m) {
    return m == PositionMode::IdealIntegration ? "ideal" : "tracking";
}

std::string to_string(VelocitySource s) {
    return s == VelocitySource::Profile ? "profile" : "backward_difference";
}

ContinuousTfd PlantParams::transfer_function() const {
    return ContinuousTfd(make_poly<double>({1.0}), make_poly<double>({inertia, damping, stiffness}));
}

std::size_t ScenarioConfig::resolved_n_conv() const {
    if (n_conv) return *n_conv;
    const double v = velocity.nominal_velocity();
    if (!(std::abs(v) > 0.0)) throw std::invalid_argument("traditional.n_conv: cannot derive from zero nominal velocity");
    return static_cast<std::size_t>(std::llround(spatial.period / (std::abs(v) * ts())));
}

void ScenarioConfig::validate() const {
    auto bad = [](const std::string& field, const std::string& rule) {
        throw std::invalid_argument(field + " " + rule);
    };
    if (!(plant.inertia > 0.0) || !std::isfinite(plant.inertia)) bad("plant.J", "must be > 0");
    if (!(plant.damping > 0.0) || !std::isfinite(plant.damping)) bad("plant.d", "must be > 0");
    if (!(plant.stiffness > 0.0) || !std::isfinite(plant.stiffness)) bad("plant.k", "must be > 0");
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) bad("sim.fs", "must be > 0");
    if (periods < 2 && duration <= 0.0) bad("scenario.periods", "must be >= 2");
    if (duration < 0.0 || !std::isfinite(duration)) bad("scenario.duration", "must be >= 0");
    if (!(abort_threshold > 0.0)) bad("scenario.abort_threshold", "must be > 0");
    if (n_conv && *n_conv < 2) bad("traditional.n_conv", "must be >= 2");
    if (preview_override && *preview_override < 0) bad("spatial.preview", "must be >= 0");
    if (!(inversion.zero_radius_limit > 0.0)) bad("learning.zero_radius_limit", "must be > 0");
    if (std::abs(disturbance.period - spatial.period) > 1e-12 * spatial.period)
        bad("disturbance.period", "must equal spatial.period");
    if (velocity.segments().empty()) bad("velocity.segments", "must not be empty");
    if (!(spatial.period > 0.0) || !std::isfinite(spatial.period)) bad("spatial.period", "must be > 0");
    if (spatial.downsample < 1) bad("spatial.downsample", "must be >= 1");
    if (!(spatial.kernel.sigma_f > 0.0)) bad("kernel.sigma_f", "must be > 0");
    if (!(spatial.kernel.sigma_n >= 0.0)) bad("kernel.sigma_n", "must be >= 0");
    if (!(spatial.kernel.length_scale > 0.0)) bad("kernel.length_scale", "must be > 0");
    if (std::abs(spatial.kernel.period - spatial.period) > 1e-12 * spatial.period)
        bad("kernel.period", "must equal spatial.period");
    SpatialRcConfig s = spatial;
    s.ts = ts();
    s.validate();
    controller.validate(ts());
}

PositionSeries generate_position(const VelocityProfile& profile, double ts, PositionMode mode, std::size_t samples,
                                 double stop_distance, const DiscreteStateSpaced* tracking_loop) {
    if (mode == PositionMode::ClosedLoopTracking && tracking_loop == nullptr)
        throw std::invalid_argument("generate_position: tracking mode needs the closed loop");
    constexpr std::size_t kMaxSamples = 50'000'000;
    const bool until_distance = samples == 0;
    if (until_distance && !(stop_distance > 0.0))
        throw std::invalid_argument("generate_position: need a sample count or a positive stop distance");

    PositionSeries out;
    std::optional<DiscreteStateSpaced> loop;
    if (tracking_loop) {
        loop = *tracking_loop;
        loop->reset();
    }
    double ideal = 0.0, v_prev = profile.velocity(0.0);
    for (std::size_t k = 0;; ++k) {
        if (!until_distance && k >= samples) break;
        if (k >= kMaxSamples) throw std::invalid_argument("velocity profile never covers the requested distance");
        const double v = profile.velocity(static_cast<double>(k) * ts);
        if (k > 0) ideal += 0.5 * ts * (v_prev + v);
        v_prev = v;
        if (mode == PositionMode::IdealIntegration) {
            out.position.push_back(ideal);
            out.velocity.push_back(v);
        } else {
            const double p = loop->step(ideal);
            out.velocity.push_back(k == 0 ? v : (p - out.position.back()) / ts);
            out.position.push_back(p);
        }
        if (until_distance && out.position.back() >= stop_distance) break;
    }
    return out;
}

std::vector<std::size_t> period_boundaries(const std::vector<double>& position, double period) {
    std::vector<std::size_t> b{0};
    std::size_t j = 1;
    for (std::size_t k = 0; k < position.size(); ++k) {
        while (position[k] >= static_cast<double>(j) * period) {
            b.push_back(k);
            ++j;
        }
    }
    return b;
}

std::vector<PeriodMetric> period_metrics(const std::vector<double>& error, const std::vector<std::size_t>& boundaries) {
    std::vector<PeriodMetric> out;
    for (std::size_t j = 1; j < boundaries.size(); ++j) {
        const std::size_t s = boundaries[j - 1], e = boundaries[j];
        if (e > error.size()) break;
        if (e == s) continue; // several periods crossed within one sample
        double sq = 0.0;
        for (std::size_t k = s; k < e; ++k) sq += error[k] * error[k];
        out.push_back({static_cast<int>(j), s, e, std::sqrt(sq) / static_cast<double>(e - s)});
    }
    if (out.empty()) throw std::invalid_argument("period_metrics: no complete period in the record");
    return out;
}

std::vector<PeriodMetric> period_metrics(const ScenarioResult& r, bool spatial_column) {
    return period_metrics(spatial_column ? r.spatial.error : r.traditional.error, r.boundaries);
}

ScenarioDesign design_scenario(const ScenarioConfig& cfg) {
    const double ts = cfg.ts();
    const ContinuousTfd plant = cfg.plant.transfer_function();
    FeedbackDesign fb = design_feedback(plant, cfg.controller, ts);
    NonCausalFilter ls = learning_filter_spatial(plant, fb.controller, ts, cfg.inversion);
    NonCausalFilter lt = learning_filter_traditional(plant, fb.controller, ts, cfg.inversion);
    const int preview = cfg.preview_override.value_or(ls.preview());
    const std::size_t n_conv = cfg.resolved_n_conv();
    return ScenarioDesign{std::move(fb), std::move(ls), std::move(lt), n_conv, preview};
}

namespace {

struct Loop {
    DiscreteStateSpaced plant;
    DiscreteStateSpaced ctrl;
    std::optional<TraditionalRepetitiveController> trad;
    std::optional<SpatialRepetitiveController> spatial;
    std::optional<DiscreteStateSpaced> spatial_learning;
    LoopTrace trace;
};

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const double ts = cfg.ts();
    ScenarioDesign design = design_scenario(cfg);

    const DiscreteStateSpaced plant_d = zoh_discretize(cfg.plant.transfer_function(), ts);
    const ClosedLoop<double> cl = connect_feedback(plant_d, design.feedback.controller);
    const std::size_t fixed = cfg.duration > 0.0 ? static_cast<std::size_t>(std::llround(cfg.duration / ts)) : 0;
    const PositionSeries pos = generate_position(cfg.velocity, ts, cfg.position_mode, fixed,
                                                 static_cast<double>(cfg.periods) * cfg.spatial.period,
                                                 &cl.complementary_sensitivity);
    const std::size_t n = pos.position.size();

    ScenarioResult r;
    r.variant = cfg.variant;
    r.p = pos.position;
    r.v = pos.velocity;
    r.t.resize(n);
    r.d.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        r.t[k] = static_cast<double>(k) * ts;
        r.d[k] = cfg.disturbance(r.p[k]);
    }
    r.boundaries = period_boundaries(r.p, cfg.spatial.period);

    const bool use_trad = cfg.variant == RcVariant::Traditional || cfg.variant == RcVariant::Both;
    const bool use_spatial = cfg.variant == RcVariant::Spatial || cfg.variant == RcVariant::Both;

    Loop trad_loop{plant_d, design.feedback.controller, {}, {}, {}, {}};
    Loop spatial_loop{plant_d, design.feedback.controller, {}, {}, {}, {}};
    if (use_trad) trad_loop.trad.emplace(design.n_conv, design.traditional_learning, cfg.q_taps);
    if (use_spatial) {
        SpatialRcConfig sc = cfg.spatial;
        sc.ts = ts;
        sc.preview = design.spatial_preview;
        spatial_loop.spatial.emplace(sc);
        spatial_loop.spatial_learning = design.spatial_learning.causal();
        spatial_loop.spatial_learning->reset();
    }
    for (Loop* l : {&trad_loop, &spatial_loop}) {
        l->trace.error.resize(n);
        l->trace.u_fb.resize(n);
        l->trace.f.resize(n);
    }
    BackwardDifferenceVelocity velocity_estimate(ts, n > 0 ? r.v[0] : 0.0);

    std::size_t k = 0;
    try {
        for (; k < n; ++k) {
            const double p = r.p[k];
            const double v = cfg.velocity_source == VelocitySource::Profile ? r.v[k] : velocity_estimate.update(p);
            for (Loop* l : {&trad_loop, &spatial_loop}) {
                const double e = -l->plant.output(0.0);
                if (!(std::abs(e) <= cfg.abort_threshold)) {
                    std::ostringstream os;
                    os << "|e| = " << std::abs(e) << " exceeds scenario.abort_threshold = " << cfg.abort_threshold;
                    throw SimulationAbort(os.str());
                }
                double f_trad = 0.0, f_spatial = 0.0;
                if (l->trad) f_trad = l->trad->step(e);
                if (l->spatial) {
                    if (l->spatial->sync(p) > 0) {
                        const GpModeld& m = l->spatial->previous_model();
                        r.gp_snapshots.push_back(GpSnapshot{
                            l->spatial->completed_periods(),
                            std::vector<double>(m.positions().begin(), m.positions().end()),
                            std::vector<double>(m.targets().begin(), m.targets().end()),
                            std::vector<double>(m.alpha().begin(), m.alpha().end()), m.jitter()});
                    }
                    f_spatial = l->spatial->feedforward(p);
                    l->spatial->record_observation(l->spatial_learning->step(e), p, v);
                }
                const double u_fb = l->ctrl.step(e + f_trad);
                l->plant.step(u_fb + f_spatial + r.d[k]);
                l->trace.error[k] = e;
                l->trace.u_fb[k] = u_fb;
                l->trace.f[k] = l->trad ? f_trad : f_spatial;
            }
        }
    } catch (const SimulationAbort& ex) {
        std::ostringstream os;
        os << "simulation diverged at sample " << k << " (t = " << static_cast<double>(k) * ts << " s): " << ex.what();
        if (k > 0)
            os << "; last valid sample " << k - 1 << ": e_trad = " << trad_loop.trace.error[k - 1]
               << ", e_spatial = " << spatial_loop.trace.error[k - 1];
        throw SimulationAbort(os.str());
    }

    r.traditional = std::move(trad_loop.trace);
    r.spatial = std::move(spatial_loop.trace);
    r.design.emplace(std::move(design));
    return r;
}

} // namespace gprc
