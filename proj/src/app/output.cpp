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

#include "gprc/app/output.hpp"

#include <cstdio>

namespace gprc {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string coeffs(const Poly<double>& p) {
    std::string s;
    for (Eigen::Index i = 0; i < p.size(); ++i) s += (i ? " " : "") + num(p(i));
    return s;
}

void checksum_line(std::ostream& os, const std::string& checksum) { os << "# config_checksum=" << checksum << '\n'; }

} // namespace

std::vector<std::pair<double, double>> kernel_profile(const KernelHyperd& hyper, int periods_each_side,
                                                      int points_per_period) {
    hyper.validate();
    std::vector<std::pair<double, double>> out;
    const int n = periods_each_side * points_per_period;
    out.reserve(static_cast<std::size_t>(2 * n + 1));
    for (int i = -n; i <= n; ++i) {
        const double lag = hyper.period * (static_cast<double>(i) / points_per_period);
        out.emplace_back(lag, periodic_kernel(0.0, lag, hyper));
    }
    return out;
}

void write_timeseries(std::ostream& os, const ScenarioResult& r, const std::string& checksum) {
    checksum_line(os, checksum);
    os << "t,p,d,e_trad,e_spatial,f_trad,f_spatial\n";
    for (std::size_t k = 0; k < r.size(); ++k) {
        os << num(r.t[k]) << ',' << num(r.p[k]) << ',' << num(r.d[k]) << ',' << num(r.traditional.error[k]) << ','
           << num(r.spatial.error[k]) << ',' << num(r.traditional.f[k]) << ',' << num(r.spatial.f[k]) << '\n';
    }
}

void write_metrics(std::ostream& os, const ScenarioResult& r, const std::string& checksum) {
    checksum_line(os, checksum);
    os << "variant,period,start_sample,end_sample,norm\n";
    auto rows = [&](const std::string& name, bool spatial_column) {
        for (const PeriodMetric& m : period_metrics(r, spatial_column))
            os << name << ',' << m.period << ',' << m.start << ',' << m.end << ',' << num(m.norm) << '\n';
    };
    switch (r.variant) {
    case RcVariant::None: rows("none", false); break;
    case RcVariant::Traditional: rows("traditional", false); break;
    case RcVariant::Spatial: rows("spatial", true); break;
    case RcVariant::Both:
        rows("traditional", false);
        rows("spatial", true);
        break;
    }
}

void write_gp_models(std::ostream& os, const ScenarioResult& r, const std::string& checksum) {
    checksum_line(os, checksum);
    os << "period,index,position,target,alpha,jitter\n";
    for (const GpSnapshot& s : r.gp_snapshots) {
        for (std::size_t i = 0; i < s.positions.size(); ++i)
            os << s.period << ',' << i << ',' << num(s.positions[i]) << ',' << num(s.targets[i]) << ','
               << num(s.alpha[i]) << ',' << num(s.jitter) << '\n';
    }
}

void write_kernel_profile(std::ostream& os, const std::vector<std::pair<double, double>>& profile,
                          const std::string& checksum) {
    checksum_line(os, checksum);
    os << "lag,covariance\n";
    for (const auto& [lag, k] : profile) os << num(lag) << ',' << num(k) << '\n';
}

void write_design_report(std::ostream& os, const ScenarioConfig& cfg, const ScenarioDesign& d) {
    const LoopMargins& m = d.feedback.margins;
    const double ts = cfg.ts();
    const DiscreteTfd plant = to_tf(zoh_discretize(cfg.plant.transfer_function(), ts));
    const LoopTfs loop = closed_loop_tfs(plant, d.feedback.controller_tf);
    const std::vector<double> band = linear_grid(0.1, 0.5 * cfg.controller.crossover_hz, 500);

    os << "controller.gain = " << num(d.feedback.gain) << '\n'
       << "controller.num = " << coeffs(d.feedback.controller_tf.num()) << '\n'
       << "controller.den = " << coeffs(d.feedback.controller_tf.den()) << '\n'
       << "margins.crossover_hz = " << num(m.crossover_hz) << '\n'
       << "margins.phase_margin_deg = " << num(m.phase_margin_deg) << '\n'
       << "margins.gain_margin_db = " << num(m.gain_margin_db) << '\n'
       << "margins.closed_loop_spectral_radius = " << num(m.closed_loop_spectral_radius) << '\n'
       << "learning.spatial.preview = " << d.spatial_learning.preview() << '\n'
       << "learning.spatial.reflected_zeros = " << d.spatial_learning.reflected_zeros().size() << '\n'
       << "learning.spatial.max_inverse_error = "
       << num(inverse_error(d.spatial_learning, loop.process_sensitivity, band)) << '\n'
       << "learning.traditional.preview = " << d.traditional_learning.preview() << '\n'
       << "learning.traditional.reflected_zeros = " << d.traditional_learning.reflected_zeros().size() << '\n'
       << "learning.traditional.max_inverse_error = "
       << num(inverse_error(d.traditional_learning, loop.complementary_sensitivity, band)) << '\n'
       << "learning.check_band_hz = 0.1.." << num(0.5 * cfg.controller.crossover_hz) << '\n'
       << "spatial.preview_used = " << d.spatial_preview << '\n'
       << "traditional.n_conv_used = " << d.n_conv << '\n';
}

void write_manifest(std::ostream& os, const LoadedConfig& cfg, const ScenarioDesign& design, const std::string& timestamp) {
    os << "tool_version = " << kToolVersion << '\n'
       << "config_checksum = " << checksum_hex(cfg.checksum) << '\n'
       << "timestamp = " << timestamp << '\n'
       << "\n[config]\n"
       << cfg.canonical << "\n[defaults_applied]\n";
    for (const auto& k : cfg.defaulted) os << k << '\n';
    os << "\n[design]\n";
    write_design_report(os, cfg.config, design);
}

} // namespace gprc
