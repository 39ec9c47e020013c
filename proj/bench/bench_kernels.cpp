// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors
//
// Serial reference vs OpenMP path for the batch kernels. Every parallel result
// is checked bit-for-bit against the serial one before its time is reported.
//
// usage: gpr_bench [jobs] [repeats]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "gpr/denoise.hpp"
#include "gpr/emd.hpp"
#include "gpr/entropy.hpp"
#include "gpr/eval.hpp"
#include "gpr/fdtd.hpp"
#include "gpr/synth.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double best_of(int repeats, const std::function<void()>& f) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = Clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    }
    return best;
}

bool failed = false;

void report(const char* name, double serial_ms, double parallel_ms, bool same) {
    std::printf("%-34s %10.1f %10.1f %7.2fx  %s\n", name, serial_ms, parallel_ms, serial_ms / parallel_ms,
                same ? "identical" : "MISMATCH");
    failed = failed || !same;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace gpr;
    const Exec par{argc > 1 ? std::atoi(argv[1]) : 0};
    const int repeats = argc > 2 ? std::max(1, std::atoi(argv[2])) : 3;
    std::printf("threads: %d, best of %d\n", resolve_jobs(par), repeats);
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial ms", "omp ms", "speedup");

    {
        const Trace noisy = add_noise(ricker(RickerSpec{}), -13.769, 1);
        const auto x = noisy.samples();
        const double r = resolve_tolerance(x, SampEnParams::relative(2, 0.5));
        TemplateCounts a, b, c;
        const double brute = best_of(1, [&] { a = count_matches_reference(x, 2, r); });
        const double s = best_of(repeats, [&] { b = count_matches(x, 2, r, Exec::serial()); });
        const double p = best_of(repeats, [&] { c = count_matches(x, 2, r, par); });
        std::printf("%-34s %10.1f %10s %8s  (all-pairs reference)\n", "sampen n=16384 brute force", brute, "-", "-");
        report("sampen n=16384 pruned", s, p, a.a == b.a && a.b == b.b && b.a == c.a && b.b == c.b);
    }
    {
        SectionSpec spec = field_like_section();
        spec.traces = 64;
        const Radargram noisy = add_noise(synthetic_section(spec), -4.372, 1);
        DenoiseConfig cfg;
        cfg.vmd.modes = 3;
        cfg.vmd.alpha = 1000.0;
        DenoisedRadargram a, b;
        const double s = best_of(repeats, [&] { a = denoise_radargram_reference(noisy, cfg); });
        const double p = best_of(repeats, [&] { b = denoise_radargram(noisy, cfg, par); });
        report("denoise_radargram 64x400", s, p, a.output == b.output);
    }
    {
        const Trace noisy = add_noise(ricker(RickerSpec{50.0, 1000.0 / 2048, 2048, 500.0}), -13.769, 1);
        EmdConfig cfg;
        cfg.seed = 1;
        EmdResult a, b;
        const double s = best_of(repeats, [&] { a = eemd_reference(noisy.samples(), cfg); });
        const double p = best_of(repeats, [&] { b = eemd(noisy.samples(), cfg, par); });
        report("eemd n=2048, 100 members", s, p, a.imfs == b.imfs && a.residue == b.residue);
    }
    {
        const ForwardModel m = void_in_sand_model().resampled(0.005, 16);
        Radargram a, b;
        const double s = best_of(1, [&] { a = fdtd_forward_reference(m); });
        const double p = best_of(1, [&] { b = fdtd_forward(m, par); });
        report("fdtd_forward 16 traces, 5 mm", s, p, a == b);
    }
    return failed ? 1 : 0;
}
