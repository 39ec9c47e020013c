// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include <gtest/gtest.h>

#include <cmath>

#include "gpr/error.hpp"
#include "gpr/fdtd.hpp"
#include "test_support.hpp"

namespace gpr {
namespace {

std::size_t argmax_abs(const std::vector<double>& v) {
    std::size_t b = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[b])) b = i;
    return b;
}

// Sand half-space with a contrast `depth` below the antennas.
ForwardModel interface_model(double cell, double depth, bool with_layer) {
    ForwardModel m;
    m.width_m = 1.0;
    m.depth_m = 0.6;
    m.cell_m = cell;
    m.background = {3.0, 0.0};
    m.fc_mhz = 900.0;
    m.offset_m = 0.025;
    m.first_trace_m = 0.5;
    m.antenna_z_m = 0.05;
    m.time_window_ns = 8.0;
    if (with_layer) m.blocks.push_back(RectBlock{0.0, 0.05 + depth, 1.0, 0.6, {9.0, 0.0}});
    return m;
}

// Two-way time of the reflection, referenced to the direct wave and corrected
// for the antenna offset.
double reflection_time(double cell) {
    const auto hom = interface_model(cell, 0.15, false), lay = interface_model(cell, 0.15, true);
    const Antenna tx{0.5 - 0.0125, 0.05}, rx{0.5 + 0.0125, 0.05};
    const auto a = simulate_shot(hom, tx, rx), b = simulate_shot(lay, tx, rx);
    std::vector<double> diff(a.receiver.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = b.receiver[i] - a.receiver[i];
    const double v = kLightSpeed / std::sqrt(3.0);
    return (static_cast<double>(argmax_abs(diff)) - static_cast<double>(argmax_abs(a.receiver))) * a.dt_ns +
           hom.offset_m / v;
}

TEST(Fdtd, InterfaceTravelTime) {
    const double expected = 2.0 * 0.15 * std::sqrt(3.0) / kLightSpeed;
    EXPECT_NEAR(expected, 1.73, 0.01);
    EXPECT_NEAR(reflection_time(0.0025), expected, 0.10 * expected);
}

TEST(Fdtd, GridRefinementConsistent) {
    const double coarse = reflection_time(0.005), fine = reflection_time(0.0025);
    EXPECT_LT(std::abs(coarse / fine - 1.0), 0.02);
}

TEST(Fdtd, HomogeneousHasNoSpuriousReflections) {
    ForwardModel air;
    air.width_m = 1.0;
    air.depth_m = 1.0;
    air.cell_m = 0.005;
    air.fc_mhz = 900.0;
    air.first_trace_m = 0.5;
    air.antenna_z_m = 0.5;
    air.time_window_ns = 15.0;
    const auto s = simulate_shot(air, {0.4875, 0.5}, {0.5125, 0.5});
    const double peak = test::max_abs(s.receiver);
    const double from = air.source_delay_ns() + air.offset_m / kLightSpeed + 2.0 / (air.fc_mhz * 1e-3);
    double tail = 0.0;
    for (std::size_t i = 0; i < s.receiver.size(); ++i)
        if ((i + 1) * s.dt_ns > from) tail = std::max(tail, std::abs(s.receiver[i]));
    EXPECT_LE(tail, 0.01 * peak);
}

TEST(Fdtd, EnergyNonIncreasingAfterSourceOff) {
    ForwardModel m = void_in_sand_model().resampled(0.005, 1);
    m.first_trace_m = 1.25;
    ShotOptions opt;
    opt.energy_stride = 100;
    const auto s = simulate_shot(m, {1.2375, m.antenna_z_m}, {1.2625, m.antenna_z_m}, opt);
    ASSERT_GE(s.energy.size(), 3u);
    for (std::size_t k = 1; k < s.energy.size(); ++k)
        EXPECT_LE(s.energy[k], s.energy[k - 1] * (1.0 + 1e-6)) << k;
}

TEST(Fdtd, Reciprocity) {
    ForwardModel m;
    m.width_m = 0.8;
    m.depth_m = 0.6;
    m.cell_m = 0.005;
    m.background = {4.0, 1e-3};
    m.first_trace_m = 0.4;
    m.antenna_z_m = 0.2;
    m.time_window_ns = 6.0;
    const Antenna a{0.3, 0.2}, b{0.45, 0.35};
    const auto ab = simulate_shot(m, a, b), ba = simulate_shot(m, b, a);
    const double scale = test::max_abs(ab.receiver);
    EXPECT_LE(test::max_abs_diff(ab.receiver, ba.receiver), 1e-6 * scale);
}

TEST(Fdtd, MirroredShotsMatch) {
    ForwardModel m = void_in_sand_model().resampled(0.005, 1);
    const double z = m.antenna_z_m;
    const auto left = simulate_shot(m, {1.0, z}, {1.025, z});
    const auto right = simulate_shot(m, {1.5, z}, {1.475, z});
    EXPECT_LE(test::max_abs_diff(left.receiver, right.receiver), 1e-9 * test::max_abs(left.receiver));
}

TEST(Fdtd, VoidHyperbolaApexAboveVoid) {
    ForwardModel m = void_in_sand_model().resampled(0.005, 25);
    m.trace_spacing_m = 0.019;
    m.first_trace_m = 1.25 - 12 * 0.019;
    ForwardModel no_void = m;
    no_void.blocks.pop_back();
    const Radargram a = fdtd_forward(m), b = fdtd_forward(no_void);
    // Earliest scattered arrival marks the apex.
    std::vector<double> t(25);
    for (std::size_t i = 0; i < 25; ++i) {
        std::vector<double> d(a.samples_per_trace());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = a[i][j] - b[i][j];
        t[i] = static_cast<double>(argmax_abs(d));
    }
    const double t_min = *std::min_element(t.begin(), t.end());
    double apex = 0.0;
    int ties = 0;
    for (std::size_t i = 0; i < 25; ++i)
        if (t[i] == t_min) {
            apex += static_cast<double>(i);
            ++ties;
        }
    apex /= ties;
    EXPECT_NEAR(m.trace_center_m(0) + apex * m.trace_spacing_m, 1.25, 2 * m.trace_spacing_m);
    // Arrival grows away from the apex.
    EXPECT_GT(t.front(), t_min);
    EXPECT_GT(t.back(), t_min);
}

TEST(Fdtd, ParallelMatchesSerial) {
    ForwardModel m = void_in_sand_model().resampled(0.01, 4);
    m.time_window_ns = 5.0;
    m.samples = 128;
    const Radargram ref = fdtd_forward_reference(m);
    EXPECT_EQ(ref.trace_count(), 4u);
    EXPECT_EQ(ref.samples_per_trace(), 128u);
    for (int jobs : {0, 2, 4}) EXPECT_EQ(fdtd_forward(m, Exec{jobs}), ref);
}

TEST(Fdtd, ResampleIsLinear) {
    ForwardModel m;
    m.time_window_ns = 4.0;
    m.samples = 4;
    ShotRecord s;
    s.dt_ns = 2.0;
    s.receiver = {2.0, 4.0, 6.0};  // at 2, 4, 6 ns
    const auto out = resample_shot(s, m);
    EXPECT_EQ(out, (std::vector<double>{0.0, 1.0, 2.0, 3.0}));
}

TEST(ForwardModel, VoidModelValues) {
    const auto m = void_in_sand_model();
    EXPECT_EQ(m.cell_m, 0.0025);
    EXPECT_EQ(m.trace_count, 125);
    EXPECT_EQ(m.fc_mhz, 900.0);
    EXPECT_EQ(m.offset_m, 0.025);
    EXPECT_EQ(m.time_window_ns, 12.0);
    EXPECT_EQ(m.material_at(1.0, 0.3).eps_r, 3.0);
    EXPECT_EQ(m.material_at(1.0, 0.3).sigma, 1e-4);
    EXPECT_EQ(m.material_at(1.0, 0.05), (Material{1.0, 1e-10}));
    EXPECT_EQ(m.material_at(1.25, 0.30).eps_r, 1.0);
    EXPECT_NEAR(m.trace_center_m(62), 1.25, 1e-12);
    EXPECT_NO_THROW(m.validate());
    EXPECT_TRUE(m.warnings().empty());
}

TEST(ForwardModel, Validation) {
    auto bad = [](auto mutate) {
        ForwardModel m = void_in_sand_model();
        mutate(m);
        EXPECT_THROW(m.validate(), InvalidModel);
    };
    bad([](ForwardModel& m) { m.courant = 1.01; });
    bad([](ForwardModel& m) { m.cell_m = 0.0; });
    bad([](ForwardModel& m) { m.background.eps_r = 0.5; });
    bad([](ForwardModel& m) { m.blocks.push_back(RectBlock{0, 0, 1, 1, {2.0, -1.0}}); });
    bad([](ForwardModel& m) { m.first_trace_m = 2.4; });
    bad([](ForwardModel& m) { m.antenna_z_m = -0.1; });
    bad([](ForwardModel& m) { m.trace_count = 0; });
    ForwardModel m = void_in_sand_model();
    EXPECT_THROW(simulate_shot(m, {3.0, 0.1}, {1.0, 0.1}), InvalidModel);
}

TEST(ForwardModel, DispersionWarning) {
    ForwardModel m = void_in_sand_model();
    m.cell_m = 0.02;
    EXPECT_FALSE(m.warnings().empty());
    EXPECT_NO_THROW(m.validate());
}

TEST(ForwardModel, BlocksPaintInOrderWithInclusiveEdges) {
    ForwardModel m;
    m.blocks.push_back(RectBlock{0.2, 0.2, 0.6, 0.6, {4.0, 0.0}});
    m.blocks.push_back(CircleBlock{0.6, 0.6, 0.1, {9.0, 0.0}});
    EXPECT_EQ(m.material_at(0.1, 0.1).eps_r, 1.0);
    EXPECT_EQ(m.material_at(0.2, 0.2).eps_r, 4.0);
    EXPECT_EQ(m.material_at(0.3, 0.3).eps_r, 4.0);
    EXPECT_EQ(m.material_at(0.6, 0.6).eps_r, 9.0);
    EXPECT_EQ(m.material_at(0.65, 0.6).eps_r, 9.0);
}

TEST(ForwardModel, ResampledKeepsSurveyLine) {
    const auto m = void_in_sand_model();
    const auto r = m.resampled(0.005, 32);
    EXPECT_NEAR(r.trace_center_m(0), m.trace_center_m(0), 1e-12);
    EXPECT_NEAR(r.trace_center_m(31), m.trace_center_m(124), 1e-12);
    EXPECT_NEAR(r.antenna_z_m, 0.145, 1e-12);
    EXPECT_EQ(r.cell_m, 0.005);
}

}  // namespace
}  // namespace gpr
