// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gpr {

/// Uniformly sampled real time series. Time is in nanoseconds throughout.
class Trace {
public:
    /// Throws InvalidInput unless samples.size() >= 2, dt_ns > 0 and every sample is finite.
    Trace(std::vector<double> samples, double dt_ns, double t0_ns = 0.0);

    std::size_t size() const noexcept { return samples_.size(); }
    double dt_ns() const noexcept { return dt_ns_; }
    double t0_ns() const noexcept { return t0_ns_; }
    double time_ns(std::size_t i) const noexcept { return t0_ns_ + dt_ns_ * static_cast<double>(i); }

    /// Nyquist frequency in MHz.
    double nyquist_mhz() const noexcept { return 500.0 / dt_ns_; }

    std::span<const double> samples() const noexcept { return samples_; }
    double operator[](std::size_t i) const noexcept { return samples_[i]; }

    /// New trace with the same time axis.
    Trace with_samples(std::vector<double> samples) const { return Trace(std::move(samples), dt_ns_, t0_ns_); }

    double energy() const noexcept;

    friend bool operator==(const Trace&, const Trace&) = default;

private:
    std::vector<double> samples_;
    double dt_ns_;
    double t0_ns_;
};

/// Ordered equal-length traces sharing one sampling interval; dx is the trace spacing in metres.
///
/// An empty radargram (no traces) is representable so that header-only files
/// can be read; processing operations reject it.
class Radargram {
public:
    Radargram() = default;
    /// Throws InvalidInput if the traces differ in length or dt, or dx is negative or non-finite.
    Radargram(std::vector<Trace> traces, double dx_m);

    std::size_t trace_count() const noexcept { return traces_.size(); }
    std::size_t samples_per_trace() const noexcept { return traces_.empty() ? 0 : traces_.front().size(); }
    bool empty() const noexcept { return traces_.empty(); }
    double dx_m() const noexcept { return dx_m_; }
    double dt_ns() const noexcept { return traces_.empty() ? dt_empty_ : traces_.front().dt_ns(); }

    const std::vector<Trace>& traces() const noexcept { return traces_; }
    const Trace& operator[](std::size_t i) const noexcept { return traces_[i]; }

    /// Empty radargram that still carries a sampling interval and per-trace length (file headers).
    static Radargram empty_with(double dt_ns, double dx_m);

    friend bool operator==(const Radargram&, const Radargram&) = default;

private:
    std::vector<Trace> traces_;
    double dx_m_ = 0.0;
    double dt_empty_ = 0.0;
};

/// Full two-sided DFT of a trace. Bin k holds frequency k*df for k < n/2 and (k-n)*df above.
struct Spectrum {
    std::vector<std::complex<double>> bins;
    double df_mhz = 0.0;
    std::size_t n = 0;
    double t0_ns = 0.0;  // carried through so that inverse_spectrum restores the time axis
};

struct ComplexTrace {
    std::vector<std::complex<double>> samples;
    double dt_ns = 0.0;
    double t0_ns = 0.0;
};

/// Unnormalized forward DFT (kernel e^{-j omega t}); the inverse carries 1/n.
Spectrum forward_spectrum(const Trace& t);

/// Inverse DFT back to a real trace.
///
/// Throws InvalidInput if the spectrum is not conjugate-symmetric, i.e. the
/// imaginary residue exceeds 1e-10 of the reconstructed signal norm.
Trace inverse_spectrum(const Spectrum& s);

/// Inverse DFT without the real-signal check.
ComplexTrace inverse_spectrum_complex(const Spectrum& s);

/// Analytic signal via the frequency domain: negative bins zeroed, positive bins
/// doubled, DC and (for even n) Nyquist kept. Requires at least 4 samples.
ComplexTrace analytic_signal(const Trace& t);

/// Symmetric extension to length 2n: reversed first half, original, reversed second half.
/// For odd n the left part has floor(n/2) samples and the right part the remaining ones.
Trace mirror_extend(const Trace& t);

/// Inverse of mirror_extend: the central n samples of an extended trace.
Trace extract_center(const Trace& extended, std::size_t n);

/// Pearson correlation of two equal-length sequences (0 if either has zero variance).
double correlation(std::span<const double> a, std::span<const double> b);

}  // namespace gpr
