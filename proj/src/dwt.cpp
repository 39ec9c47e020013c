// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/dwt.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gpr/error.hpp"

namespace gpr {
namespace {

constexpr std::array<double, 2> kDb1{0.7071067811865476, 0.7071067811865476};
constexpr std::array<double, 4> kDb2{0.4829629131445341, 0.8365163037378079, 0.2241438680420134,
                                     -0.1294095225512604};
constexpr std::array<double, 6> kDb3{0.3326705529500826, 0.8068915093110925, 0.4598775021184915,
                                     -0.1350110200102546, -0.0854412738820267, 0.0352262918857095};
constexpr std::array<double, 8> kDb4{0.2303778133088964,  0.7148465705529154,  0.6308807679298587,
                                     -0.0279837694168599, -0.1870348117190931, 0.0308413818355607,
                                     0.0328830116668852,  -0.0105974017850690};

// One analysis step on a periodic signal of even length.
void analyze(std::span<const double> x, std::span<const double> h, std::vector<double>& a, std::vector<double>& d) {
    const std::size_t n = x.size();
    const std::size_t L = h.size();
    a.assign(n / 2, 0.0);
    d.assign(n / 2, 0.0);
    for (std::size_t k = 0; k < n / 2; ++k) {
        double sa = 0.0, sd = 0.0;
        for (std::size_t j = 0; j < L; ++j) {
            const double v = x[(2 * k + j) % n];
            const double g = ((j % 2 == 0) ? 1.0 : -1.0) * h[L - 1 - j];
            sa += h[j] * v;
            sd += g * v;
        }
        a[k] = sa;
        d[k] = sd;
    }
}

std::vector<double> synthesize(std::span<const double> a, std::span<const double> d, std::span<const double> h) {
    const std::size_t n = 2 * a.size();
    const std::size_t L = h.size();
    std::vector<double> x(n, 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t j = 0; j < L; ++j) {
            const double g = ((j % 2 == 0) ? 1.0 : -1.0) * h[L - 1 - j];
            x[(2 * k + j) % n] += h[j] * a[k] + g * d[k];
        }
    }
    return x;
}

double median_abs(std::vector<double> v) {
    for (auto& x : v) x = std::abs(x);
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (v.size() % 2 == 1) return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(v.begin(), mid);
    return 0.5 * (lo + hi);
}

}  // namespace

Wavelet parse_wavelet(const std::string& name) {
    if (name == "db1" || name == "haar") return Wavelet::db1;
    if (name == "db2") return Wavelet::db2;
    if (name == "db3") return Wavelet::db3;
    if (name == "db4") return Wavelet::db4;
    throw InvalidInput("unknown wavelet '" + name + "'");
}

std::string wavelet_name(Wavelet w) {
    switch (w) {
        case Wavelet::db1: return "db1";
        case Wavelet::db2: return "db2";
        case Wavelet::db3: return "db3";
        case Wavelet::db4: return "db4";
    }
    return "db4";
}

std::span<const double> scaling_filter(Wavelet w) {
    switch (w) {
        case Wavelet::db1: return kDb1;
        case Wavelet::db2: return kDb2;
        case Wavelet::db3: return kDb3;
        case Wavelet::db4: return kDb4;
    }
    return kDb4;
}

WaveletCoefficients dwt_decompose(std::span<const double> x, Wavelet w, int levels) {
    const std::size_t n = x.size();
    if (n < 2) throw InvalidInput("dwt: need at least 2 samples");
    const int max_levels = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
    if (levels < 1 || levels > max_levels)
        throw InvalidInput("dwt: levels must lie in [1, floor(log2 n)] = [1, " + std::to_string(max_levels) + "]");

    const std::size_t block = std::size_t{1} << levels;
    const std::size_t padded = (n + block - 1) / block * block;
    std::vector<double> cur(x.begin(), x.end());
    // Half-sample symmetric extension up to the padded length.
    for (std::size_t i = n; i < padded; ++i) {
        const std::size_t back = i - n;
        cur.push_back(x[back < n ? n - 1 - back : 0]);
    }

    WaveletCoefficients c;
    c.wavelet = w;
    c.length = n;
    const auto h = scaling_filter(w);
    std::vector<double> a, d;
    for (int lev = 0; lev < levels; ++lev) {
        analyze(cur, h, a, d);
        c.details.push_back(d);
        cur = a;
    }
    c.approximation = std::move(cur);
    return c;
}

std::vector<double> dwt_reconstruct(const WaveletCoefficients& c) {
    const auto h = scaling_filter(c.wavelet);
    std::vector<double> cur = c.approximation;
    for (auto it = c.details.rbegin(); it != c.details.rend(); ++it) {
        if (it->size() != cur.size()) throw InvalidInput("dwt: inconsistent coefficient sizes");
        cur = synthesize(cur, *it, h);
    }
    cur.resize(c.length);
    return cur;
}

double universal_threshold(const WaveletCoefficients& c) {
    if (c.details.empty() || c.details.front().empty()) return 0.0;
    const double sigma = median_abs(c.details.front()) / 0.6745;
    return sigma * std::sqrt(2.0 * std::log(static_cast<double>(c.length)));
}

Trace dwt_denoise(const Trace& t, const DwtConfig& cfg) {
    WaveletCoefficients c = dwt_decompose(t.samples(), cfg.wavelet, cfg.levels);
    const double lambda = universal_threshold(c);
    for (auto& level : c.details) {
        for (auto& v : level) {
            if (cfg.mode == ThresholdMode::soft)
                v = std::copysign(std::max(std::abs(v) - lambda, 0.0), v);
            else if (std::abs(v) <= lambda)
                v = 0.0;
        }
    }
    return t.with_samples(dwt_reconstruct(c));
}

}  // namespace gpr
