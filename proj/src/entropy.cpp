// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "gpr/error.hpp"

namespace gpr {

void SampEnParams::validate() const {
    if (m < 1) throw InvalidInput("sample entropy: m must be >= 1");
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("sample entropy: r must be positive");
}

double resolve_tolerance(std::span<const double> x, const SampEnParams& p) {
    p.validate();
    if (!p.relative_r) return p.r;
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    return p.r * std::sqrt(var / n);
}

namespace {

// Templates of length m+1 packed row-wise in order of their first sample, so that
// the candidates of row p are the contiguous rows p+1..end(p) with first sample
// within r. Every template i < N - m has its (m+1)-th sample, so A is counted on
// the same pairs as B.
struct Packed {
    std::vector<double> rows;   // L x (m+1)
    std::vector<double> first;  // first sample of each row
};

Packed pack(std::span<const double> x, int m) {
    const std::size_t L = x.size() - static_cast<std::size_t>(m);
    const std::size_t w = static_cast<std::size_t>(m) + 1;
    std::vector<std::size_t> order(L);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    Packed p;
    p.rows.resize(L * w);
    p.first.resize(L);
    for (std::size_t q = 0; q < L; ++q) {
        std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(order[q]), w, p.rows.begin() + static_cast<std::ptrdiff_t>(q * w));
        p.first[q] = x[order[q]];
    }
    return p;
}

template <int M>
void scan_row_fixed(const Packed& t, std::size_t pos, std::size_t end, double r, std::uint64_t& b,
                    std::uint64_t& a) {
    constexpr std::size_t w = M + 1;
    const double* ti = t.rows.data() + pos * w;
    std::uint64_t bb = 0, aa = 0;
    for (std::size_t q = pos + 1; q < end; ++q) {
        const double* tj = t.rows.data() + q * w;
        double d = 0.0;
        for (int k = 1; k < M; ++k) d = std::max(d, std::abs(ti[k] - tj[k]));
        const bool mb = d <= r;
        bb += mb;
        aa += mb & (std::abs(ti[M] - tj[M]) <= r);
    }
    b += bb;
    a += aa;
}

void scan_row_generic(const Packed& t, int m, std::size_t pos, std::size_t end, double r, std::uint64_t& b,
                      std::uint64_t& a) {
    const std::size_t w = static_cast<std::size_t>(m) + 1;
    const double* ti = t.rows.data() + pos * w;
    for (std::size_t q = pos + 1; q < end; ++q) {
        const double* tj = t.rows.data() + q * w;
        double d = 0.0;
        for (int k = 1; k < m; ++k) d = std::max(d, std::abs(ti[k] - tj[k]));
        if (d > r) continue;
        ++b;
        if (std::abs(ti[m] - tj[m]) <= r) ++a;
    }
}

void scan_row(const Packed& t, int m, std::size_t pos, double r, std::uint64_t& b, std::uint64_t& a) {
    // First-sample distance is already within r for every row before `end`.
    const double limit = t.first[pos] + r;
    const auto end = static_cast<std::size_t>(
        std::upper_bound(t.first.begin() + static_cast<std::ptrdiff_t>(pos) + 1, t.first.end(), limit) -
        t.first.begin());
    switch (m) {
        case 1: return scan_row_fixed<1>(t, pos, end, r, b, a);
        case 2: return scan_row_fixed<2>(t, pos, end, r, b, a);
        case 3: return scan_row_fixed<3>(t, pos, end, r, b, a);
        default: return scan_row_generic(t, m, pos, end, r, b, a);
    }
}

}  // namespace

TemplateCounts count_matches(std::span<const double> x, int m, double r, Exec exec) {
    const Packed t = pack(x, m);
    const std::size_t L = t.first.size();

    std::uint64_t b = 0, a = 0;
    if (exec.is_serial()) {
        for (std::size_t pos = 0; pos < L; ++pos) scan_row(t, m, pos, r, b, a);
    } else {
        const auto rows = static_cast<std::int64_t>(L);
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : b, a) num_threads(resolve_jobs(exec))
        for (std::int64_t pos = 0; pos < rows; ++pos) scan_row(t, m, static_cast<std::size_t>(pos), r, b, a);
    }
    return TemplateCounts{b, a};
}

TemplateCounts count_matches_reference(std::span<const double> x, int m, double r) {
    const std::size_t L = x.size() - static_cast<std::size_t>(m);
    TemplateCounts c;
    for (std::size_t i = 0; i + 1 < L; ++i) {
        for (std::size_t j = i + 1; j < L; ++j) {
            double d = 0.0;
            for (int k = 0; k < m; ++k) d = std::max(d, std::abs(x[i + k] - x[j + k]));
            if (d > r) continue;
            ++c.b;
            if (std::abs(x[i + m] - x[j + m]) <= r) ++c.a;
        }
    }
    return c;
}

double sample_entropy(std::span<const double> x, const SampEnParams& p, Exec exec) {
    p.validate();
    if (x.size() <= static_cast<std::size_t>(p.m) + 1)
        throw InvalidInput("sample entropy: series length must exceed m + 1");
    for (double v : x)
        if (!std::isfinite(v)) throw InvalidInput("sample entropy: non-finite sample");
    const double r = resolve_tolerance(x, p);
    if (r == 0.0) {
        // Zero-variance series under a relative tolerance: all templates coincide.
        return 0.0;
    }
    const TemplateCounts c = count_matches(x, p.m, r, exec);
    if (c.b == 0) throw Undefined("sample entropy undefined: no template matches at length m");
    if (c.a == 0) return std::numeric_limits<double>::infinity();
    return std::log(static_cast<double>(c.b) / static_cast<double>(c.a));  // ln(B/A): +0 rather than -0 when A = B
}

}  // namespace gpr
