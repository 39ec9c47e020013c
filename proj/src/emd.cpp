// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/emd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpr/error.hpp"
#include "gpr/rng.hpp"

namespace gpr {

void EmdConfig::validate() const {
    if (max_imfs < 0) throw InvalidInput("emd: max_imfs must be >= 0");
    if (!(sift_stop > 0.0 && sift_stop < 1.0)) throw InvalidInput("emd: sift_stop must lie in (0, 1)");
    if (max_sifts < 1) throw InvalidInput("emd: max_sifts must be >= 1");
    if (ensemble_size < 1) throw InvalidInput("emd: ensemble_size must be >= 1");
    if (!(ensemble_noise_std >= 0.0)) throw InvalidInput("emd: ensemble_noise_std must be >= 0");
}

int EmdConfig::imf_cap(std::size_t n) const {
    if (max_imfs > 0) return max_imfs;
    return std::max(1, static_cast<int>(std::floor(std::log2(static_cast<double>(n)))));
}

std::vector<double> cubic_spline(std::span<const double> xs, std::span<const double> ys, std::size_t count) {
    const std::size_t k = xs.size();
    if (k < 2 || ys.size() != k) throw InvalidInput("cubic_spline: need at least 2 knots");
    std::vector<double> out(count);
    if (k == 2) {
        const double slope = (ys[1] - ys[0]) / (xs[1] - xs[0]);
        for (std::size_t i = 0; i < count; ++i) out[i] = ys[0] + slope * (static_cast<double>(i) - xs[0]);
        return out;
    }
    // Second derivatives from the tridiagonal system, natural end conditions (Thomas algorithm).
    std::vector<double> h(k - 1), m(k, 0.0), c(k, 0.0), d(k, 0.0);
    for (std::size_t i = 0; i + 1 < k; ++i) h[i] = xs[i + 1] - xs[i];
    for (std::size_t i = 1; i + 1 < k; ++i) {
        const double diag = 2.0 * (h[i - 1] + h[i]);
        const double rhs = 6.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]);
        const double denom = diag - h[i - 1] * c[i - 1];
        c[i] = h[i] / denom;
        d[i] = (rhs - h[i - 1] * d[i - 1]) / denom;
    }
    for (std::size_t i = k - 2; i >= 1; --i) m[i] = d[i] - c[i] * m[i + 1];

    std::size_t seg = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = static_cast<double>(i);
        while (seg + 2 < k && x > xs[seg + 1]) ++seg;
        const double hs = h[seg];
        const double a = (xs[seg + 1] - x) / hs;
        const double b = (x - xs[seg]) / hs;
        out[i] = a * ys[seg] + b * ys[seg + 1] +
                 ((a * a * a - a) * m[seg] + (b * b * b - b) * m[seg + 1]) * hs * hs / 6.0;
    }
    return out;
}

Extrema find_extrema(std::span<const double> x) {
    Extrema e;
    const std::size_t n = x.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        // Collapse plateaus: compare against the next differing sample.
        std::size_t j = i;
        while (j + 1 < n && x[j + 1] == x[i]) ++j;
        if (j + 1 >= n) break;
        if (x[i] > x[i - 1] && x[i] > x[j + 1]) e.maxima.push_back(i);
        if (x[i] < x[i - 1] && x[i] < x[j + 1]) e.minima.push_back(i);
        i = j + 1;
    }
    return e;
}

namespace {

// Envelope through the given extrema, with the two nearest ones mirrored about each end.
std::vector<double> envelope(std::span<const double> x, const std::vector<std::size_t>& idx) {
    const std::size_t n = x.size();
    const double last = static_cast<double>(n - 1);
    std::vector<double> kx, ky;
    kx.reserve(idx.size() + 4);
    ky.reserve(idx.size() + 4);
    const std::size_t p = idx.size();
    for (std::size_t q = std::min<std::size_t>(2, p); q-- > 0;) {
        kx.push_back(-static_cast<double>(idx[q]));
        ky.push_back(x[idx[q]]);
    }
    for (std::size_t q : idx) {
        kx.push_back(static_cast<double>(q));
        ky.push_back(x[q]);
    }
    for (std::size_t q = 0; q < std::min<std::size_t>(2, p); ++q) {
        const std::size_t s = idx[p - 1 - q];
        kx.push_back(2.0 * last - static_cast<double>(s));
        ky.push_back(x[s]);
    }
    return cubic_spline(kx, ky, n);
}

bool can_sift(const Extrema& e) { return e.maxima.size() >= 2 && e.minima.size() >= 2; }

}  // namespace

EmdResult emd(std::span<const double> x, const EmdConfig& cfg) {
    cfg.validate();
    EmdResult res;
    res.residue.assign(x.begin(), x.end());
    const std::size_t n = x.size();
    if (n < 4) return res;
    const int cap = cfg.imf_cap(n);

    std::vector<double> h(n), mean(n);
    while (static_cast<int>(res.imfs.size()) < cap) {
        if (!can_sift(find_extrema(res.residue))) break;
        h = res.residue;
        for (int s = 0; s < cfg.max_sifts; ++s) {
            const Extrema e = find_extrema(h);
            if (!can_sift(e)) break;
            const auto upper = envelope(h, e.maxima);
            const auto lower = envelope(h, e.minima);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                mean[i] = 0.5 * (upper[i] + lower[i]);
                num += mean[i] * mean[i];
                den += h[i] * h[i];
                h[i] -= mean[i];
            }
            if (den == 0.0 || num / den < cfg.sift_stop) break;
        }
        for (std::size_t i = 0; i < n; ++i) res.residue[i] -= h[i];
        res.imfs.push_back(h);
    }
    return res;
}

namespace {

double stddev(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    return std::sqrt(var / n);
}

EmdResult member_run(std::span<const double> x, const EmdConfig& cfg, double noise_std, std::size_t member) {
    if (noise_std == 0.0) return emd(x, cfg);
    Rng rng(cfg.seed, member);
    std::vector<double> y(x.begin(), x.end());
    for (auto& v : y) v += noise_std * rng.normal();
    return emd(y, cfg);
}

struct Accumulator {
    std::vector<std::vector<double>> imfs;
    std::vector<double> residue;

    void add(const EmdResult& r) {
        if (residue.empty()) residue.assign(r.residue.size(), 0.0);
        while (imfs.size() < r.imfs.size()) imfs.emplace_back(residue.size(), 0.0);
        for (std::size_t k = 0; k < r.imfs.size(); ++k)
            for (std::size_t i = 0; i < residue.size(); ++i) imfs[k][i] += r.imfs[k][i];
        for (std::size_t i = 0; i < residue.size(); ++i) residue[i] += r.residue[i];
    }

    EmdResult finish(int members) {
        const double scale = 1.0 / static_cast<double>(members);
        for (auto& imf : imfs)
            for (auto& v : imf) v *= scale;
        for (auto& v : residue) v *= scale;
        return EmdResult{std::move(imfs), std::move(residue)};
    }
};

}  // namespace

EmdResult eemd_reference(std::span<const double> x, const EmdConfig& cfg) {
    cfg.validate();
    const double noise_std = cfg.ensemble_noise_std * stddev(x);
    Accumulator acc;
    for (int m = 0; m < cfg.ensemble_size; ++m) acc.add(member_run(x, cfg, noise_std, static_cast<std::size_t>(m)));
    return acc.finish(cfg.ensemble_size);
}

EmdResult eemd(std::span<const double> x, const EmdConfig& cfg, Exec exec) {
    if (exec.is_serial() || cfg.ensemble_size == 1) return eemd_reference(x, cfg);
    cfg.validate();
    const double noise_std = cfg.ensemble_noise_std * stddev(x);
    Accumulator acc;
#pragma omp parallel for ordered schedule(static, 1) num_threads(resolve_jobs(exec))
    for (int m = 0; m < cfg.ensemble_size; ++m) {
        EmdResult r = member_run(x, cfg, noise_std, static_cast<std::size_t>(m));
#pragma omp ordered
        acc.add(r);
    }
    return acc.finish(cfg.ensemble_size);
}

EemdDenoised eemd_denoise(const Trace& t, const EmdConfig& cfg, const EntropyGate& gate, Exec exec) {
    gate.validate();
    EmdResult r = eemd(t.samples(), cfg, exec);
    std::vector<Trace> ascending;
    ascending.reserve(r.imfs.size());
    for (auto it = r.imfs.rbegin(); it != r.imfs.rend(); ++it) ascending.push_back(t.with_samples(*it));

    std::vector<double> out = r.residue;
    ModeSelection sel;
    if (!ascending.empty()) {
        sel = apply_gate(component_entropies(ascending, gate.sampen, exec), gate);
        for (std::size_t k = 0; k < ascending.size(); ++k) {
            if (!sel.retained[k]) continue;
            const auto s = ascending[k].samples();
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += s[i];
        }
    }
    return EemdDenoised{t.with_samples(std::move(out)), std::move(sel), r.imfs.size()};
}

}  // namespace gpr
