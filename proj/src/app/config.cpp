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

#include "gprc/app/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "gprc/errors.hpp"

namespace gprc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_number(const std::string& key, const std::string& raw) {
    std::string s = trim(raw);
    double factor = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        factor = std::numbers::pi;
        s = trim(s.substr(0, s.size() - 2));
        if (!s.empty() && s.back() == '*') s = trim(s.substr(0, s.size() - 1));
        if (s.empty()) return factor;
    }
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
        throw ConfigError(key + ": cannot parse number '" + raw + "'");
    return v * factor;
}

long parse_integer(const std::string& key, const std::string& raw) {
    const double v = parse_number(key, raw);
    if (v != std::floor(v) || std::abs(v) > 1e15) throw ConfigError(key + ": expected an integer, got '" + raw + "'");
    return static_cast<long>(v);
}

struct Setting {
    std::function<void(ScenarioConfig&, const std::string&)> apply;
};

const std::vector<std::pair<std::string, Setting>>& settings() {
    using C = ScenarioConfig;
    static const std::vector<std::pair<std::string, Setting>> table = {
        {"plant.J", {[](C& c, const std::string& v) { c.plant.inertia = parse_number("plant.J", v); }}},
        {"plant.d", {[](C& c, const std::string& v) { c.plant.damping = parse_number("plant.d", v); }}},
        {"plant.k", {[](C& c, const std::string& v) { c.plant.stiffness = parse_number("plant.k", v); }}},
        {"sim.fs", {[](C& c, const std::string& v) { c.sample_rate_hz = parse_number("sim.fs", v); }}},
        {"controller.crossover_hz",
         {[](C& c, const std::string& v) { c.controller.crossover_hz = parse_number("controller.crossover_hz", v); }}},
        {"controller.lead_ratio",
         {[](C& c, const std::string& v) { c.controller.lead_ratio = parse_number("controller.lead_ratio", v); }}},
        {"controller.lowpass_multiple",
         {[](C& c, const std::string& v) { c.controller.lowpass_multiple = parse_number("controller.lowpass_multiple", v); }}},
        {"controller.lowpass_damping",
         {[](C& c, const std::string& v) { c.controller.lowpass_damping = parse_number("controller.lowpass_damping", v); }}},
        {"controller.min_phase_margin_deg",
         {[](C& c, const std::string& v) {
             c.controller.min_phase_margin_deg = parse_number("controller.min_phase_margin_deg", v);
         }}},
        {"learning.zero_radius_limit",
         {[](C& c, const std::string& v) { c.inversion.zero_radius_limit = parse_number("learning.zero_radius_limit", v); }}},
        {"rc.variant", {[](C& c, const std::string& v) { c.variant = parse_variant(v); }}},
        {"spatial.period",
         {[](C& c, const std::string& v) {
             c.spatial.period = parse_number("spatial.period", v);
             c.spatial.kernel.period = c.spatial.period;
             c.disturbance.period = c.spatial.period;
         }}},
        {"spatial.downsample",
         {[](C& c, const std::string& v) { c.spatial.downsample = static_cast<int>(parse_integer("spatial.downsample", v)); }}},
        {"spatial.preview",
         {[](C& c, const std::string& v) {
             if (trim(v) == "auto") c.preview_override.reset();
             else c.preview_override = static_cast<int>(parse_integer("spatial.preview", v));
         }}},
        {"spatial.velocity_source",
         {[](C& c, const std::string& v) {
             const std::string s = trim(v);
             if (s == "profile") c.velocity_source = VelocitySource::Profile;
             else if (s == "backward_difference") c.velocity_source = VelocitySource::BackwardDifference;
             else throw ConfigError("spatial.velocity_source: expected profile|backward_difference, got '" + s + "'");
         }}},
        {"kernel.sigma_f", {[](C& c, const std::string& v) { c.spatial.kernel.sigma_f = parse_number("kernel.sigma_f", v); }}},
        {"kernel.sigma_n", {[](C& c, const std::string& v) { c.spatial.kernel.sigma_n = parse_number("kernel.sigma_n", v); }}},
        {"kernel.length_scale",
         {[](C& c, const std::string& v) { c.spatial.kernel.length_scale = parse_number("kernel.length_scale", v); }}},
        {"kernel.period", {[](C& c, const std::string& v) { c.spatial.kernel.period = parse_number("kernel.period", v); }}},
        {"traditional.n_conv",
         {[](C& c, const std::string& v) {
             if (trim(v) == "auto") c.n_conv.reset();
             else {
                 const long n = parse_integer("traditional.n_conv", v);
                 if (n < 2) throw ConfigError("traditional.n_conv must be >= 2");
                 c.n_conv = static_cast<std::size_t>(n);
             }
         }}},
        {"traditional.q_taps",
         {[](C& c, const std::string& v) {
             c.q_taps.clear();
             for (const auto& t : split(v, ',')) c.q_taps.push_back(parse_number("traditional.q_taps", t));
         }}},
        {"disturbance.harmonics",
         {[](C& c, const std::string& v) {
             c.disturbance.harmonics.clear();
             for (const auto& item : split(v, ',')) {
                 const auto f = split(item, ':');
                 if (f.size() < 2 || f.size() > 3)
                     throw ConfigError("disturbance.harmonics: expected amplitude:frequency[:phase], got '" + item + "'");
                 c.disturbance.harmonics.push_back({parse_number("disturbance.harmonics", f[0]),
                                                    parse_number("disturbance.harmonics", f[1]),
                                                    f.size() == 3 ? parse_number("disturbance.harmonics", f[2]) : 0.0});
             }
         }}},
        {"velocity.segments",
         {[](C& c, const std::string& v) {
             std::vector<VelocitySegment> segs;
             for (const auto& item : split(v, ',')) {
                 const auto f = split(item, ':');
                 if (f.size() != 3) throw ConfigError("velocity.segments: expected duration:v_start:v_end, got '" + item + "'");
                 segs.push_back({parse_number("velocity.segments", f[0]), parse_number("velocity.segments", f[1]),
                                 parse_number("velocity.segments", f[2])});
             }
             try {
                 c.velocity = VelocityProfile(std::move(segs));
             } catch (const std::invalid_argument& e) {
                 throw ConfigError(std::string("velocity.segments: ") + e.what());
             }
         }}},
        {"scenario.periods",
         {[](C& c, const std::string& v) { c.periods = static_cast<int>(parse_integer("scenario.periods", v)); }}},
        {"scenario.duration", {[](C& c, const std::string& v) { c.duration = parse_number("scenario.duration", v); }}},
        {"scenario.abort_threshold",
         {[](C& c, const std::string& v) { c.abort_threshold = parse_number("scenario.abort_threshold", v); }}},
        {"scenario.position_mode",
         {[](C& c, const std::string& v) {
             const std::string s = trim(v);
             if (s == "ideal") c.position_mode = PositionMode::IdealIntegration;
             else if (s == "tracking") c.position_mode = PositionMode::ClosedLoopTracking;
             else throw ConfigError("scenario.position_mode: expected ideal|tracking, got '" + s + "'");
         }}},
    };
    return table;
}

// Velocity shorthand, resolved into velocity.segments when the latter is absent.
const std::vector<std::string> kVelocityShorthand = {"velocity.nominal", "velocity.changed",
                                                     "velocity.change_after_periods", "velocity.ramp_duration"};

} // namespace

RcVariant parse_variant(const std::string& raw) {
    const std::string s = trim(raw);
    if (s == "none") return RcVariant::None;
    if (s == "traditional") return RcVariant::Traditional;
    if (s == "spatial") return RcVariant::Spatial;
    if (s == "both") return RcVariant::Both;
    throw ConfigError("rc.variant: expected none|traditional|spatial|both, got '" + s + "'");
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : settings()) k.push_back(name);
        k.insert(k.end(), kVelocityShorthand.begin(), kVelocityShorthand.end());
        return k;
    }();
    return keys;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string checksum_hex(std::uint64_t checksum) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(checksum));
    return buf;
}

std::string canonical_config(const ScenarioConfig& c) {
    std::ostringstream os;
    auto line = [&](const std::string& k, const std::string& v) { os << k << " = " << v << '\n'; };
    line("plant.J", fmt(c.plant.inertia));
    line("plant.d", fmt(c.plant.damping));
    line("plant.k", fmt(c.plant.stiffness));
    line("sim.fs", fmt(c.sample_rate_hz));
    line("controller.crossover_hz", fmt(c.controller.crossover_hz));
    line("controller.lead_ratio", fmt(c.controller.lead_ratio));
    line("controller.lowpass_multiple", fmt(c.controller.lowpass_multiple));
    line("controller.lowpass_damping", fmt(c.controller.lowpass_damping));
    line("controller.min_phase_margin_deg", fmt(c.controller.min_phase_margin_deg));
    line("learning.zero_radius_limit", fmt(c.inversion.zero_radius_limit));
    line("rc.variant", to_string(c.variant));
    line("spatial.period", fmt(c.spatial.period));
    line("spatial.downsample", std::to_string(c.spatial.downsample));
    line("spatial.preview", c.preview_override ? std::to_string(*c.preview_override) : "auto");
    line("spatial.velocity_source", to_string(c.velocity_source));
    line("kernel.sigma_f", fmt(c.spatial.kernel.sigma_f));
    line("kernel.sigma_n", fmt(c.spatial.kernel.sigma_n));
    line("kernel.length_scale", fmt(c.spatial.kernel.length_scale));
    line("kernel.period", fmt(c.spatial.kernel.period));
    line("traditional.n_conv", c.n_conv ? std::to_string(*c.n_conv) : "auto");
    std::string taps;
    for (std::size_t i = 0; i < c.q_taps.size(); ++i) taps += (i ? ", " : "") + fmt(c.q_taps[i]);
    line("traditional.q_taps", taps.empty() ? "1" : taps);
    std::string harm;
    for (std::size_t i = 0; i < c.disturbance.harmonics.size(); ++i) {
        const auto& h = c.disturbance.harmonics[i];
        harm += (i ? ", " : "") + fmt(h.amplitude) + ":" + fmt(h.frequency) + ":" + fmt(h.phase);
    }
    line("disturbance.harmonics", harm);
    std::string segs;
    for (std::size_t i = 0; i < c.velocity.segments().size(); ++i) {
        const auto& s = c.velocity.segments()[i];
        segs += (i ? ", " : "") + fmt(s.duration) + ":" + fmt(s.v_start) + ":" + fmt(s.v_end);
    }
    line("velocity.segments", segs);
    line("scenario.periods", std::to_string(c.periods));
    line("scenario.duration", fmt(c.duration));
    line("scenario.abort_threshold", fmt(c.abort_threshold));
    line("scenario.position_mode", to_string(c.position_mode));
    return os.str();
}

LoadedConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> values;
    std::vector<std::string> unknown;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    const auto& keys = config_keys();
    while (std::getline(is, raw)) {
        ++line_no;
        const std::string l = trim(raw.substr(0, raw.find('#')));
        if (l.empty()) continue;
        const auto eq = l.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(l.substr(0, eq));
        const std::string value = trim(l.substr(eq + 1));
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            unknown.push_back(key);
            continue;
        }
        if (values.count(key)) throw ConfigError(key + ": duplicate key (line " + std::to_string(line_no) + ")");
        values[key] = value;
    }
    if (!unknown.empty()) {
        std::string msg = "unknown configuration keys:";
        for (const auto& k : unknown) msg += " " + k;
        throw ConfigError(msg);
    }

    LoadedConfig out;
    ScenarioConfig& c = out.config;
    // spatial.period first so kernel.period can be checked against it.
    for (const auto& [name, setting] : settings()) {
        const auto it = values.find(name);
        if (it == values.end()) {
            if (name != "kernel.period") out.defaulted.push_back(name);
            continue;
        }
        setting.apply(c, it->second);
    }

    if (!values.count("velocity.segments")) {
        auto get = [&](const std::string& k, double def) {
            const auto it = values.find(k);
            if (it == values.end()) {
                out.defaulted.push_back(k);
                return def;
            }
            return parse_number(k, it->second);
        };
        const double v0 = get("velocity.nominal", 3.6593);
        const double v1 = get("velocity.changed", 5.2);
        const double after = get("velocity.change_after_periods", 3.0);
        const double ramp = get("velocity.ramp_duration", 0.5);
        if (!(v0 > 0.0)) throw ConfigError("velocity.nominal must be > 0");
        if (!(after > 0.0)) throw ConfigError("velocity.change_after_periods must be > 0");
        if (ramp < 0.0) throw ConfigError("velocity.ramp_duration must be >= 0");
        c.velocity = VelocityProfile::step_change(v0, v1, after, c.spatial.period, ramp);
    } else {
        for (const auto& k : kVelocityShorthand)
            if (values.count(k)) throw ConfigError(k + ": cannot be combined with velocity.segments");
    }
    if (!values.count("kernel.period")) c.spatial.kernel.period = c.spatial.period;

    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    out.canonical = canonical_config(c);
    out.checksum = fnv1a64(out.canonical);
    return out;
}

LoadedConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace gprc
