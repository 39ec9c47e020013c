// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <span>
#include <string>
#include <vector>

#include "gpr/signal.hpp"

namespace gpr {

/// Orthogonal Daubechies wavelets; dbN has 2N taps and N vanishing moments (db1 = Haar).
enum class Wavelet { db1, db2, db3, db4 };

enum class ThresholdMode { soft, hard };

Wavelet parse_wavelet(const std::string& name);
std::string wavelet_name(Wavelet w);

/// Scaling (low-pass) filter, normalized so that sum h = sqrt(2).
std::span<const double> scaling_filter(Wavelet w);

struct DwtConfig {
    Wavelet wavelet = Wavelet::db4;
    int levels = 4;
    ThresholdMode mode = ThresholdMode::soft;
    // Threshold rule: universal, sigma * sqrt(2 ln n) with sigma = median(|finest details|) / 0.6745.
};

/// Periodized multilevel decomposition. The input is extended symmetrically to a
/// multiple of 2^levels; `length` remembers the original size.
struct WaveletCoefficients {
    std::vector<double> approximation;
    std::vector<std::vector<double>> details;  // details[0] is the finest level
    Wavelet wavelet = Wavelet::db4;
    std::size_t length = 0;
};

/// Throws InvalidInput unless 1 <= levels <= floor(log2 n).
WaveletCoefficients dwt_decompose(std::span<const double> x, Wavelet w, int levels);
std::vector<double> dwt_reconstruct(const WaveletCoefficients& c);

/// Universal threshold for a set of coefficients (noise level from the finest details).
double universal_threshold(const WaveletCoefficients& c);

Trace dwt_denoise(const Trace& t, const DwtConfig& cfg);

}  // namespace gpr
