// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gpr/error.hpp"
#include "gpr/fft.hpp"

namespace gpr {

Trace::Trace(std::vector<double> samples, double dt_ns, double t0_ns)
    : samples_(std::move(samples)), dt_ns_(dt_ns), t0_ns_(t0_ns) {
    if (samples_.size() < 2) throw InvalidInput("trace needs at least 2 samples");
    if (!(dt_ns_ > 0.0) || !std::isfinite(dt_ns_)) throw InvalidInput("trace dt must be positive and finite");
    if (!std::isfinite(t0_ns_)) throw InvalidInput("trace t0 must be finite");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(samples_[i]))
            throw InvalidInput("trace sample " + std::to_string(i) + " is not finite");
    }
}

double Trace::energy() const noexcept {
    double e = 0.0;
    for (double v : samples_) e += v * v;
    return e;
}

Radargram::Radargram(std::vector<Trace> traces, double dx_m) : traces_(std::move(traces)), dx_m_(dx_m) {
    if (!(dx_m_ >= 0.0) || !std::isfinite(dx_m_)) throw InvalidInput("radargram dx must be non-negative and finite");
    for (std::size_t i = 1; i < traces_.size(); ++i) {
        if (traces_[i].size() != traces_[0].size())
            throw InvalidInput("radargram trace " + std::to_string(i) + " has a different length");
        if (traces_[i].dt_ns() != traces_[0].dt_ns())
            throw InvalidInput("radargram trace " + std::to_string(i) + " has a different dt");
    }
}

Radargram Radargram::empty_with(double dt_ns, double dx_m) {
    Radargram r({}, dx_m);
    r.dt_empty_ = dt_ns;
    return r;
}

Spectrum forward_spectrum(const Trace& t) {
    Spectrum s;
    s.n = t.size();
    s.bins = fft::forward(t.samples());
    // df = 1/(n dt); dt in ns gives GHz, hence the factor 1000 for MHz.
    s.df_mhz = 1000.0 / (static_cast<double>(s.n) * t.dt_ns());
    s.t0_ns = t.t0_ns();
    return s;
}

ComplexTrace inverse_spectrum_complex(const Spectrum& s) {
    if (s.bins.size() != s.n || s.n < 2) throw InvalidInput("spectrum bin count must equal n >= 2");
    if (!(s.df_mhz > 0.0)) throw InvalidInput("spectrum df must be positive");
    ComplexTrace out;
    out.samples = fft::inverse(s.bins);
    out.dt_ns = 1000.0 / (static_cast<double>(s.n) * s.df_mhz);
    out.t0_ns = s.t0_ns;
    return out;
}

Trace inverse_spectrum(const Spectrum& s) {
    ComplexTrace c = inverse_spectrum_complex(s);
    double re2 = 0.0, im2 = 0.0;
    std::vector<double> re(c.samples.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        re[i] = c.samples[i].real();
        re2 += re[i] * re[i];
        im2 += c.samples[i].imag() * c.samples[i].imag();
    }
    const double norm = std::sqrt(re2 + im2);
    if (std::sqrt(im2) > 1e-10 * norm)
        throw InvalidInput("spectrum is not conjugate-symmetric; inverse is not a real signal");
    return Trace(std::move(re), c.dt_ns, c.t0_ns);
}

ComplexTrace analytic_signal(const Trace& t) {
    const std::size_t n = t.size();
    if (n < 4) throw InvalidInput("analytic signal needs at least 4 samples");
    auto X = fft::forward(t.samples());
    const std::size_t half = n / 2;
    // Positive bins 1..ceil(n/2)-1 doubled; for even n bin n/2 is Nyquist and kept.
    const std::size_t last_pos = (n % 2 == 0) ? half - 1 : half;
    for (std::size_t k = 1; k <= last_pos; ++k) X[k] *= 2.0;
    for (std::size_t k = last_pos + 1 + (n % 2 == 0 ? 1 : 0); k < n; ++k) X[k] = 0.0;
    ComplexTrace out;
    out.samples = fft::inverse(X);
    out.dt_ns = t.dt_ns();
    out.t0_ns = t.t0_ns();
    return out;
}

Trace mirror_extend(const Trace& t) {
    const std::size_t n = t.size();
    const std::size_t h = n / 2;
    auto x = t.samples();
    std::vector<double> out;
    out.reserve(2 * n);
    for (std::size_t i = 0; i < h; ++i) out.push_back(x[h - 1 - i]);
    out.insert(out.end(), x.begin(), x.end());
    for (std::size_t i = 0; i < n - h; ++i) out.push_back(x[n - 1 - i]);
    return Trace(std::move(out), t.dt_ns(), t.t0_ns() - static_cast<double>(h) * t.dt_ns());
}

Trace extract_center(const Trace& extended, std::size_t n) {
    if (extended.size() != 2 * n) throw InvalidInput("extract_center: extended trace must have length 2n");
    const std::size_t h = n / 2;
    auto x = extended.samples();
    return Trace(std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(h),
                                     x.begin() + static_cast<std::ptrdiff_t>(h + n)),
                 extended.dt_ns(), extended.t0_ns() + static_cast<double>(h) * extended.dt_ns());
}

double correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) throw InvalidInput("correlation needs equal non-empty sequences");
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace gpr
