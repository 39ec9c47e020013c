// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gpr/signal.hpp"

namespace gpr {

enum class OmegaInit { uniform, zero, random };

/// Variational mode decomposition parameters.
///
/// Frequencies inside the solver are normalized (cycles per sample, Nyquist = 0.5),
/// so alpha is dimensionless and independent of the sampling interval. The
/// Wiener-type mode filter is 1 / (1 + 2 alpha (nu - nu_k)^2).
struct VmdConfig {
    int modes = 4;
    double alpha = 2000.0;
    double tau = 0.0;  // dual ascent step; 0 disables the multiplier (pure quadratic penalty)
    double tol = 1e-7;
    int max_iter = 500;
    OmegaInit omega_init = OmegaInit::uniform;
    std::uint64_t seed = 0;  // only used by OmegaInit::random

    /// Throws InvalidInput on K < 1, alpha <= 0, tau < 0, tol outside (0,1), max_iter < 1.
    void validate() const;
};

/// Modes sorted by ascending center frequency.
struct VmdResult {
    std::vector<Trace> modes;
    std::vector<double> omegas_mhz;
    Trace residual;  // input minus the sum of modes
    int iterations = 0;
    bool converged = false;
    double final_change = 0.0;
};

/// Solver state handed to an observer after every outer iteration.
///
/// Spectra are one-sided, on the mirror-extended grid of length 2n: bin j has
/// normalized frequency frequencies[j] = j / (2n), j in [0, n).
struct VmdIterate {
    int iteration = 0;
    std::span<const double> omegas;  // normalized, in solver (unsorted) order
    std::span<const std::vector<std::complex<double>>> mode_spectra;
    std::span<const std::complex<double>> signal_spectrum;
    std::span<const std::complex<double>> multiplier;
    std::span<const double> frequencies;
    double change = 0.0;
};

using VmdObserver = std::function<void(const VmdIterate&)>;

/// Decomposes a trace into cfg.modes band-limited modes (frequency-domain ADMM).
///
/// The trace is mirror-extended to 2n before solving and trimmed afterwards.
/// Iteration stops once sum_k |u_k^{n+1} - u_k^n|^2 / |u_k^n|^2 < tol (measured on
/// the one-sided spectra) or max_iter is reached; the latter is reported through
/// converged = false. A zero-energy input returns K zero modes with converged = true.
VmdResult decompose(const Trace& t, const VmdConfig& cfg, const VmdObserver& observer = {});

/// First mode update of a single-mode decomposition with omega = 0 and zero
/// multiplier: inverse DFT of X(nu) / (1 + 2 alpha nu^2) on the trace's own grid
/// (full two-sided spectrum, no mirror extension), nu in cycles/sample.
Trace single_mode_first_step(const Trace& t, double alpha);

}  // namespace gpr
