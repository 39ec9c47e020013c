// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <cstddef>
#include <vector>

#include "gpr/signal.hpp"

namespace gpr {

/// Ricker wavelet trace. Defaults describe the 50 MHz, 1000 ns desk experiment.
struct RickerSpec {
    double fc_mhz = 50.0;
    double dt_ns = 1000.0 / 16384.0;
    std::size_t n = 16384;
    double t0_ns = 500.0;  // peak time

    /// Throws InvalidInput unless fc > 0, n >= 2 and there are at least 10 samples per period.
    void validate() const;
};

/// Ricker amplitude (1 - 2 pi^2 fc^2 tau^2) exp(-pi^2 fc^2 tau^2), tau in ns, fc in MHz.
double ricker_value(double fc_mhz, double tau_ns);

/// Samples at t_i = i * dt; the peak value is exactly 1 at t0.
Trace ricker(const RickerSpec& spec);

/// Planar reflector: two-way time t0 + dip * x at trace position x (m).
struct Layer {
    double t0_ns = 0.0;
    double dip_ns_per_m = 0.0;
    double amplitude = 1.0;
};

/// Point diffractor: t(x) = sqrt(t_apex^2 + (2 (x - x0) / v)^2).
struct Diffractor {
    double x_m = 0.0;
    double t_apex_ns = 0.0;
    double velocity_m_per_ns = 0.1;
    double amplitude = 1.0;
};

/// Convolutional B-scan: every event is a Ricker wavelet at its travel time.
/// Trace i sits at x = i * dx.
struct SectionSpec {
    std::size_t traces = 256;
    std::size_t samples = 400;
    double dt_ns = 0.25;
    double dx_m = 0.5;
    double fc_mhz = 100.0;
    std::vector<Layer> layers;
    std::vector<Diffractor> diffractors;

    /// Throws InvalidInput on empty geometry, dt too coarse for fc, or non-positive velocities.
    void validate() const;
};

/// 256 x 400 section on a 128 m line with a direct wave, two dipping
/// interfaces and three diffractors; stands in for field data that is not
/// distributed with the toolkit.
SectionSpec field_like_section();

Radargram synthetic_section(const SectionSpec& spec);

}  // namespace gpr
