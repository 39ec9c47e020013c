// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <cstdint>
#include <span>

#include "gpr/exec.hpp"

namespace gpr {

/// Sample entropy parameters. r is either an absolute amplitude or, with
/// relative_r, a multiple of the series' population standard deviation.
struct SampEnParams {
    int m = 2;
    double r = 0.2;
    bool relative_r = true;

    static SampEnParams absolute(int m, double r) { return SampEnParams{m, r, false}; }
    static SampEnParams relative(int m, double fraction) { return SampEnParams{m, fraction, true}; }

    void validate() const;
};

/// Template-match counts behind a sample entropy value. Both counts run over
/// the same N - m templates, unordered pairs, self-matches excluded.
struct TemplateCounts {
    std::uint64_t b = 0;  // length-m matches
    std::uint64_t a = 0;  // length-(m+1) matches
};

/// Tolerance actually used for x (r itself, or r * std(x)).
double resolve_tolerance(std::span<const double> x, const SampEnParams& p);

/// SampEn = -ln(A/B) with Chebyshev template distance <= r; +infinity when A = 0 < B.
///
/// Throws InvalidInput when N <= m + 1 and Undefined when B = 0. A relative
/// tolerance on a zero-variance series resolves to r = 0; every template then
/// matches exactly and the result is 0.
double sample_entropy(std::span<const double> x, const SampEnParams& p, Exec exec = {});

/// Match counts via candidate pruning: templates are sorted by their first
/// sample and each one is only compared with neighbours within r of it. Exact;
/// the OpenMP path splits the outer loop and sums integer counts.
TemplateCounts count_matches(std::span<const double> x, int m, double r, Exec exec = {});

/// Straight double loop over all template pairs; serial reference kept for tests and benchmarks.
TemplateCounts count_matches_reference(std::span<const double> x, int m, double r);

}  // namespace gpr
