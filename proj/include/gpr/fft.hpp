// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gpr::fft {

using cplx = std::complex<double>;

// Unnormalized forward transform, X_k = sum_n x_n e^{-2 pi i k n / N}. Any N >= 1.
std::vector<cplx> forward(std::span<const cplx> x);
std::vector<cplx> forward(std::span<const double> x);

// Inverse transform including the 1/N factor.
std::vector<cplx> inverse(std::span<const cplx> X);

// Signed bin frequency in cycles/sample: k/N for k < ceil(N/2), (k-N)/N otherwise.
// The Nyquist bin of an even-length transform maps to -0.5.
double bin_frequency(std::size_t k, std::size_t n);

}  // namespace gpr::fft
