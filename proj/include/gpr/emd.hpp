// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpr/denoise.hpp"
#include "gpr/exec.hpp"
#include "gpr/signal.hpp"

namespace gpr {

struct EmdConfig {
    int max_imfs = 0;  // 0: floor(log2 n)
    double sift_stop = 0.2;
    int max_sifts = 10;
    int ensemble_size = 100;
    double ensemble_noise_std = 0.2;  // fraction of the input's standard deviation
    std::uint64_t seed = 0;

    void validate() const;
    int imf_cap(std::size_t n) const;
};

/// IMFs in extraction order (highest frequency first) plus the final residue.
struct EmdResult {
    std::vector<std::vector<double>> imfs;
    std::vector<double> residue;
};

/// Natural cubic spline through (xs, ys), evaluated at 0, 1, ..., count-1.
/// xs must be strictly increasing with at least 2 knots.
std::vector<double> cubic_spline(std::span<const double> xs, std::span<const double> ys, std::size_t count);

/// Strict local extrema indices (interior samples only); plateaus report their first sample.
struct Extrema {
    std::vector<std::size_t> maxima;
    std::vector<std::size_t> minima;
};
Extrema find_extrema(std::span<const double> x);

/// Empirical mode decomposition by envelope-mean sifting.
///
/// Envelopes are natural cubic splines through the maxima/minima with the two
/// nearest extrema mirrored about each end. A sift ends when
/// sum(mean^2) / sum(h^2) < sift_stop or after max_sifts. Extraction stops when
/// the residue has fewer than two maxima or two minima, or at the IMF cap.
/// Sum of IMFs plus residue reproduces the input up to rounding.
EmdResult emd(std::span<const double> x, const EmdConfig& cfg);

/// Ensemble EMD: members run on x plus seeded white noise of standard deviation
/// ensemble_noise_std * std(x); IMFs are averaged rank-wise (members with fewer
/// IMFs contribute zeros) and residues averaged. Member m draws its noise from
/// Rng(seed, m), and the accumulation runs in member order on every path.
EmdResult eemd(std::span<const double> x, const EmdConfig& cfg, Exec exec = {});

/// Serial reference of eemd.
EmdResult eemd_reference(std::span<const double> x, const EmdConfig& cfg);

struct EemdDenoised {
    Trace output;
    ModeSelection selection;  // entries in ascending-frequency order (last IMF first)
    std::size_t imf_count = 0;
};

/// EEMD followed by the entropy gate. IMFs are presented to the gate from the
/// lowest-frequency one upward; the output is the residue plus retained IMFs.
EemdDenoised eemd_denoise(const Trace& t, const EmdConfig& cfg, const EntropyGate& gate, Exec exec = {});

}  // namespace gpr
