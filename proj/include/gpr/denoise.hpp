// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpr/entropy.hpp"
#include "gpr/exec.hpp"
#include "gpr/signal.hpp"
#include "gpr/vmd.hpp"

namespace gpr {

enum class GateStrategy {
    prefix,    // keep modes 1..M, M the longest run from the lowest frequency with SE <= R
    per_mode,  // keep every mode with SE <= R
};

/// Sample-entropy mode gate. Components are given in ascending-frequency order.
///
/// Defaults (m = 2, r = 0.5 std, R = 0.30) were calibrated on the Ricker and
/// forward-model experiments; see README "Calibration".
struct EntropyGate {
    SampEnParams sampen = SampEnParams::relative(2, 0.5);
    double threshold = 0.30;  // R
    GateStrategy strategy = GateStrategy::prefix;

    void validate() const;
};

struct DenoiseConfig {
    VmdConfig vmd{};
    EntropyGate gate{};

    void validate() const {
        vmd.validate();
        gate.validate();
    }
};

struct ModeSelection {
    std::vector<double> entropies;
    std::vector<bool> retained;
    std::size_t retained_count = 0;
};

/// Applies the gate to precomputed entropies. Throws EmptySelection (carrying the
/// entropies) when nothing is retained.
ModeSelection apply_gate(std::span<const double> entropies, const EntropyGate& gate);

/// Sample entropy of each component; an undefined entropy (no length-m matches)
/// is reported as +infinity, which no threshold retains.
std::vector<double> component_entropies(std::span<const Trace> components, const SampEnParams& p, Exec exec = {});

/// Entropy gate over a decomposition whose modes are already sorted by ascending omega.
ModeSelection select_modes(const VmdResult& result, const EntropyGate& gate, Exec exec = {});

struct DenoiseReport {
    std::vector<double> entropies;
    std::vector<bool> retained;
    std::size_t retained_count = 0;
    std::vector<double> omegas_mhz;
    int iterations = 0;
    bool converged = false;
    std::optional<double> snr_before_db;
    std::optional<double> snr_after_db;
    std::optional<std::string> error;  // set when the trace was passed through unchanged
};

struct DenoisedTrace {
    Trace output;
    DenoiseReport report;
};

/// Decompose, gate, and sum the retained modes. Propagates EmptySelection.
/// exec only affects the entropy kernel; the result does not depend on it.
DenoisedTrace denoise_trace(const Trace& t, const DenoiseConfig& cfg, Exec exec = {});

struct DenoisedRadargram {
    Radargram output;
    std::vector<DenoiseReport> reports;  // one per trace, in trace order
};

/// Each trace de-noised independently with the same configuration. A trace whose
/// modes are all rejected is passed through unchanged and its report carries the
/// error. When a clean reference is given, per-trace SNR before/after is filled in.
DenoisedRadargram denoise_radargram(const Radargram& r, const DenoiseConfig& cfg, Exec exec = {},
                                    const Radargram* reference = nullptr);

/// Serial reference of denoise_radargram.
DenoisedRadargram denoise_radargram_reference(const Radargram& r, const DenoiseConfig& cfg,
                                              const Radargram* reference = nullptr);

}  // namespace gpr
