// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gpr/error.hpp"

namespace gpr {

void RickerSpec::validate() const {
    if (!(fc_mhz > 0.0) || !std::isfinite(fc_mhz)) throw InvalidInput("ricker: fc must be positive");
    if (!(dt_ns > 0.0)) throw InvalidInput("ricker: dt must be positive");
    if (n < 2) throw InvalidInput("ricker: need at least 2 samples");
    // At least 10 samples per period: dt < 1 / (10 fc), with fc in GHz for dt in ns.
    if (!(dt_ns < 1000.0 / (10.0 * fc_mhz))) throw InvalidInput("ricker: dt too coarse for fc (< 10 samples/period)");
    if (!std::isfinite(t0_ns)) throw InvalidInput("ricker: t0 must be finite");
}

double ricker_value(double fc_mhz, double tau_ns) {
    const double f = fc_mhz * 1e-3;  // GHz
    const double a = std::numbers::pi * std::numbers::pi * f * f * tau_ns * tau_ns;
    return (1.0 - 2.0 * a) * std::exp(-a);
}

Trace ricker(const RickerSpec& spec) {
    spec.validate();
    std::vector<double> s(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i)
        s[i] = ricker_value(spec.fc_mhz, static_cast<double>(i) * spec.dt_ns - spec.t0_ns);
    return Trace(std::move(s), spec.dt_ns);
}

void SectionSpec::validate() const {
    if (traces < 1 || samples < 2) throw InvalidInput("section: need at least 1 trace of 2 samples");
    if (!(dx_m >= 0.0) || !std::isfinite(dx_m)) throw InvalidInput("section: dx must be >= 0");
    RickerSpec{fc_mhz, dt_ns, samples, 0.0}.validate();
    for (const auto& d : diffractors)
        if (!(d.velocity_m_per_ns > 0.0)) throw InvalidInput("section: diffractor velocity must be positive");
}

SectionSpec field_like_section() {
    SectionSpec s;
    s.layers = {
        {8.0, 0.0, 1.0},      // direct wave
        {30.0, 0.12, 0.35},   // dipping interface
        {72.0, -0.10, 0.25},  // interface dipping the other way
    };
    s.diffractors = {
        {32.0, 45.0, 0.1, 0.4},
        {70.0, 55.0, 0.1, 0.3},
        {100.0, 38.0, 0.1, 0.35},
    };
    return s;
}

Radargram synthetic_section(const SectionSpec& spec) {
    spec.validate();
    std::vector<Trace> out;
    out.reserve(spec.traces);
    // Beyond 3 periods the wavelet is below 1e-15 of its peak.
    const double support = 3000.0 / spec.fc_mhz;
    for (std::size_t i = 0; i < spec.traces; ++i) {
        const double x = static_cast<double>(i) * spec.dx_m;
        std::vector<double> s(spec.samples, 0.0);
        auto add_event = [&](double t, double amp) {
            const auto lo = static_cast<std::ptrdiff_t>(std::ceil((t - support) / spec.dt_ns));
            const auto hi = static_cast<std::ptrdiff_t>(std::floor((t + support) / spec.dt_ns));
            for (std::ptrdiff_t k = std::max<std::ptrdiff_t>(lo, 0);
                 k <= std::min<std::ptrdiff_t>(hi, static_cast<std::ptrdiff_t>(spec.samples) - 1); ++k)
                s[static_cast<std::size_t>(k)] += amp * ricker_value(spec.fc_mhz, static_cast<double>(k) * spec.dt_ns - t);
        };
        for (const auto& l : spec.layers) add_event(l.t0_ns + l.dip_ns_per_m * x, l.amplitude);
        for (const auto& d : spec.diffractors) {
            const double h = 2.0 * (x - d.x_m) / d.velocity_m_per_ns;
            add_event(std::sqrt(d.t_apex_ns * d.t_apex_ns + h * h), d.amplitude);
        }
        out.emplace_back(std::move(s), spec.dt_ns);
    }
    return Radargram(std::move(out), spec.dx_m);
}

}  // namespace gpr
