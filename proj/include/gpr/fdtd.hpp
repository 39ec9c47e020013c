// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "gpr/exec.hpp"
#include "gpr/signal.hpp"

namespace gpr {

struct Material {
    double eps_r = 1.0;
    double sigma = 0.0;  // S/m

    friend bool operator==(const Material&, const Material&) = default;
};

/// Axis-aligned block, x0 <= x <= x1 and z0 <= z <= z1 (metres, z downward).
struct RectBlock {
    double x0 = 0, z0 = 0, x1 = 0, z1 = 0;
    Material material;
};

/// Disc with (x - cx)^2 + (z - cz)^2 <= radius^2.
struct CircleBlock {
    double cx = 0, cz = 0, radius = 0;
    Material material;
};

using Block = std::variant<RectBlock, CircleBlock>;

/// 2D GPR forward model: material section, survey geometry and time axis.
///
/// The physical section spans [0, width] x [0, depth]; a PML of pml_cells
/// surrounds it on all four sides. Blocks are painted over the background in
/// order. Antenna pairs are centred on first_trace_m + i * trace_spacing_m with
/// the transmitter at -offset/2 and the receiver at +offset/2, both at antenna_z_m.
struct ForwardModel {
    double width_m = 1.0;
    double depth_m = 1.0;
    double cell_m = 0.0025;
    Material background{};
    std::vector<Block> blocks;

    double fc_mhz = 900.0;
    double offset_m = 0.025;
    int trace_count = 1;
    double trace_spacing_m = 0.0;
    double first_trace_m = 0.5;
    double antenna_z_m = 0.0;

    double time_window_ns = 12.0;
    int samples = 512;
    int pml_cells = 10;
    int pml_order = 3;
    double courant = 0.95;  // dt = courant * cell / (c sqrt 2)

    /// Throws InvalidModel for a non-positive size, eps_r < 1, sigma < 0, an
    /// unstable time step, or any antenna position outside the physical section.
    void validate() const;

    /// Dispersion guard: a message when the cell exceeds a tenth of the shortest
    /// wavelength at 2*fc (where the Ricker spectrum has fallen off).
    std::vector<std::string> warnings() const;

    Material material_at(double x_m, double z_m) const;
    double time_step_ns() const;
    double source_delay_ns() const;  // Ricker peak time, 1.2 / fc
    double source_cutoff_ns() const; // the source is switched off after 3 / fc

    double trace_center_m(int i) const { return first_trace_m + trace_spacing_m * i; }

    /// Copy re-gridded to a new cell size with the survey spread over the same
    /// line using `traces` antenna positions.
    ForwardModel resampled(double cell_m, int traces) const;
};

/// Speed of light in m/ns.
inline constexpr double kLightSpeed = 0.299792458;

/// Void-in-sand section: 0.15 m of air over 0.30 m of dry sand,
/// 2.5 m wide, with a 0.075 m air void centred at x = 1.25 m, mid-sand.
/// 900 MHz Ricker, 0.025 m offset, 125 traces, 2.5 mm cells, 12 ns window.
ForwardModel void_in_sand_model();

/// Key-value text format; see README for the schema.
ForwardModel parse_model(std::istream& in);
ForwardModel load_model(const std::string& path);
void write_model(std::ostream& out, const ForwardModel& m);

struct Antenna {
    double x_m = 0.0;
    double z_m = 0.0;
};

struct ShotOptions {
    int energy_stride = 0;  // > 0: sample the field energy every this many steps once the source is off
};

/// One transmitter/receiver simulation at the native time step.
struct ShotRecord {
    std::vector<double> receiver;  // E field at the receiver after each step; receiver[j] is at (j+1) dt
    double dt_ns = 0.0;
    std::vector<double> energy;    // discrete field energy samples (see ShotOptions)
};

ShotRecord simulate_shot(const ForwardModel& model, Antenna tx, Antenna rx, ShotOptions options = {});

/// Linear resampling of a shot onto the model's output axis (samples over the window, starting at t = 0).
std::vector<double> resample_shot(const ShotRecord& shot, const ForwardModel& model);

/// Full radargram, one shot per trace. Traces are independent and run in
/// parallel; the result does not depend on exec.
Radargram fdtd_forward(const ForwardModel& model, Exec exec = {});

/// Serial reference of fdtd_forward.
Radargram fdtd_forward_reference(const ForwardModel& model);

}  // namespace gpr
