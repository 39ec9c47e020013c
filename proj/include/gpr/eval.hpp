// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gpr/denoise.hpp"
#include "gpr/dwt.hpp"
#include "gpr/emd.hpp"
#include "gpr/exec.hpp"
#include "gpr/signal.hpp"

namespace gpr {

/// Signal-to-noise ratio |M|^2 / |S - M|^2, kept both as a ratio and in dB.
/// A test signal identical to the reference gives ratio = db = +infinity,
/// which is a valid measurement rather than an error.
struct SnrMeasure {
    double ratio = 0.0;
    double db = 0.0;

    static SnrMeasure from_ratio(double ratio);
    bool infinite() const noexcept;
};

/// Throws InvalidInput on shape mismatch or an all-zero reference.
SnrMeasure snr(std::span<const double> clean, std::span<const double> test);
SnrMeasure snr(const Trace& clean, const Trace& test);
/// Radargrams are compared flattened over all traces.
SnrMeasure snr(const Radargram& clean, const Radargram& test);

/// Adds seeded white Gaussian noise scaled against the realized noise vector so
/// that snr(clean, result) equals target_db up to rounding. For radargrams the
/// noise is drawn trace-major from one stream and scaled over the whole section.
Trace add_noise(const Trace& clean, double target_db, std::uint64_t seed);
Radargram add_noise(const Radargram& clean, double target_db, std::uint64_t seed);

struct VmdMethod {
    DenoiseConfig config{};
};

struct EemdMethod {
    EmdConfig emd{};
    // EEMD IMFs separate at a lower entropy than VMD modes, so the threshold is
    // calibrated separately (README "Calibration").
    EntropyGate gate{SampEnParams::relative(2, 0.5), 0.10, GateStrategy::prefix};
};

struct DwtMethod {
    DwtConfig config{};
};

using MethodSpec = std::variant<VmdMethod, EemdMethod, DwtMethod>;

std::string method_name(const MethodSpec& m);

/// Runs one method on every trace of a radargram.
Radargram run_method(const MethodSpec& m, const Radargram& noisy, Exec exec = {});

struct ComparisonRow {
    std::string method;
    std::uint64_t seed = 0;
    double input_snr_db = 0.0;
    double output_snr_db = 0.0;
    double runtime_ms = 0.0;
    std::string error;  // empty on success; output_snr_db is NaN otherwise
};

/// Scores each method on `noisy` against `clean`. Rows are ordered by method
/// name; a failing method yields a row with the error recorded. `seed` is
/// recorded in the table and also seeds the EEMD ensemble.
std::vector<ComparisonRow> compare_methods(const Radargram& clean, const Radargram& noisy,
                                           std::span<const MethodSpec> methods, std::uint64_t seed,
                                           Exec exec = {});

/// CSV with header `method,seed,input_snr_db,output_snr_db,runtime_ms`.
void write_comparison_csv(std::ostream& os, std::span<const ComparisonRow> rows);

}  // namespace gpr
