// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/vmd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gpr/error.hpp"
#include "gpr/fft.hpp"
#include "gpr/rng.hpp"

namespace gpr {

using cplx = std::complex<double>;

void VmdConfig::validate() const {
    if (modes < 1) throw InvalidInput("vmd: number of modes must be >= 1");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidInput("vmd: alpha must be positive");
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidInput("vmd: tau must be non-negative");
    if (!(tol > 0.0 && tol < 1.0)) throw InvalidInput("vmd: tol must lie in (0, 1)");
    if (max_iter < 1) throw InvalidInput("vmd: max_iter must be >= 1");
}

namespace {

std::vector<double> initial_omegas(const VmdConfig& cfg) {
    const auto K = static_cast<std::size_t>(cfg.modes);
    std::vector<double> omega(K, 0.0);
    switch (cfg.omega_init) {
        case OmegaInit::uniform:
            // Evenly spaced over [0, Nyquist/2).
            for (std::size_t k = 0; k < K; ++k) omega[k] = 0.25 * static_cast<double>(k) / static_cast<double>(K);
            break;
        case OmegaInit::zero:
            break;
        case OmegaInit::random: {
            Rng rng(cfg.seed);
            for (auto& w : omega) w = 0.5 * rng.uniform();
            std::sort(omega.begin(), omega.end());
            break;
        }
    }
    return omega;
}

// Real time-domain signal of length 2h whose one-sided spectrum (bins 0..h-1) is `half`.
std::vector<double> hermitian_inverse(std::span<const cplx> half) {
    const std::size_t h = half.size();
    const std::size_t T = 2 * h;
    std::vector<cplx> full(T, cplx{});
    full[0] = half[0].real();
    for (std::size_t j = 1; j < h; ++j) {
        full[j] = half[j];
        full[T - j] = std::conj(half[j]);
    }
    auto time = fft::inverse(full);
    std::vector<double> out(T);
    for (std::size_t i = 0; i < T; ++i) out[i] = time[i].real();
    return out;
}

}  // namespace

VmdResult decompose(const Trace& t, const VmdConfig& cfg, const VmdObserver& observer) {
    cfg.validate();
    const std::size_t n = t.size();
    const auto K = static_cast<std::size_t>(cfg.modes);
    const double to_mhz = 1000.0 / t.dt_ns();

    std::vector<double> omega = initial_omegas(cfg);

    if (t.energy() == 0.0) {
        std::vector<Trace> modes(K, t.with_samples(std::vector<double>(n, 0.0)));
        std::vector<double> omegas_mhz(K);
        for (std::size_t k = 0; k < K; ++k) omegas_mhz[k] = omega[k] * to_mhz;
        return VmdResult{std::move(modes), std::move(omegas_mhz), t.with_samples(std::vector<double>(n, 0.0)), 0, true,
                         0.0};
    }

    const Trace extended = mirror_extend(t);
    const std::size_t T = extended.size();
    const std::size_t H = T / 2;  // one-sided bins 0..H-1; the Nyquist bin is dropped

    auto full = fft::forward(extended.samples());
    std::vector<cplx> f_hat(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(H));
    std::vector<double> freq(H);
    for (std::size_t j = 0; j < H; ++j) freq[j] = static_cast<double>(j) / static_cast<double>(T);

    std::vector<std::vector<cplx>> u(K, std::vector<cplx>(H, cplx{}));
    std::vector<cplx> u_old(H);
    std::vector<cplx> lambda(H, cplx{});
    std::vector<cplx> sum(H, cplx{});

    int iter = 0;
    double change = std::numeric_limits<double>::infinity();
    bool converged = false;

    while (iter < cfg.max_iter) {
        // Fresh accumulator each sweep so rounding does not drift across iterations.
        std::fill(sum.begin(), sum.end(), cplx{});
        for (const auto& mode : u)
            for (std::size_t j = 0; j < H; ++j) sum[j] += mode[j];

        change = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            auto& uk = u[k];
            u_old = uk;
            const double wk = omega[k];
            double num = 0.0, den = 0.0, diff = 0.0, old_norm = 0.0;
            for (std::size_t j = 0; j < H; ++j) {
                const cplx others = sum[j] - uk[j];
                const double d = freq[j] - wk;
                uk[j] = (f_hat[j] - others + 0.5 * lambda[j]) / (1.0 + 2.0 * cfg.alpha * d * d);
                sum[j] = others + uk[j];
                const double p = std::norm(uk[j]);
                num += freq[j] * p;
                den += p;
                diff += std::norm(uk[j] - u_old[j]);
                old_norm += std::norm(u_old[j]);
            }
            if (den > 0.0) omega[k] = num / den;
            if (old_norm > 0.0)
                change += diff / old_norm;
            else if (diff > 0.0)
                change = std::numeric_limits<double>::infinity();
        }

        if (cfg.tau > 0.0) {
            for (std::size_t j = 0; j < H; ++j) lambda[j] += cfg.tau * (f_hat[j] - sum[j]);
        }
        ++iter;

        if (observer) {
            VmdIterate state;
            state.iteration = iter;
            state.omegas = omega;
            state.mode_spectra = u;
            state.signal_spectrum = f_hat;
            state.multiplier = lambda;
            state.frequencies = freq;
            state.change = change;
            observer(state);
        }
        if (change < cfg.tol) {
            converged = true;
            break;
        }
    }

    std::vector<std::size_t> order(K);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return omega[a] < omega[b]; });

    std::vector<Trace> modes;
    std::vector<double> omegas_mhz;
    modes.reserve(K);
    std::vector<double> residual(t.samples().begin(), t.samples().end());
    const std::size_t offset = n / 2;
    for (std::size_t k : order) {
        auto time = hermitian_inverse(u[k]);
        std::vector<double> trimmed(time.begin() + static_cast<std::ptrdiff_t>(offset),
                                    time.begin() + static_cast<std::ptrdiff_t>(offset + n));
        modes.push_back(t.with_samples(std::move(trimmed)));
        omegas_mhz.push_back(omega[k] * to_mhz);
    }
    // Subtract in ascending-omega order so the residual is a fixed function of the sorted modes.
    for (const auto& m : modes)
        for (std::size_t i = 0; i < n; ++i) residual[i] -= m[i];

    return VmdResult{std::move(modes), std::move(omegas_mhz), t.with_samples(std::move(residual)), iter, converged,
                     change};
}

Trace single_mode_first_step(const Trace& t, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidInput("vmd: alpha must be positive");
    const std::size_t n = t.size();
    auto X = fft::forward(t.samples());
    for (std::size_t k = 0; k < n; ++k) {
        const double nu = fft::bin_frequency(k, n);
        X[k] /= 1.0 + 2.0 * alpha * nu * nu;
    }
    auto x = fft::inverse(X);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i].real();
    return t.with_samples(std::move(out));
}

}  // namespace gpr
