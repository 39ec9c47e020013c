// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "gpr/error.hpp"
#include "gpr/rng.hpp"

namespace gpr {

SnrMeasure SnrMeasure::from_ratio(double ratio) {
    SnrMeasure m;
    m.ratio = ratio;
    m.db = std::isinf(ratio) ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(ratio);
    return m;
}

bool SnrMeasure::infinite() const noexcept { return std::isinf(ratio); }

SnrMeasure snr(std::span<const double> clean, std::span<const double> test) {
    if (clean.size() != test.size()) throw InvalidInput("snr: clean and test shapes differ");
    double signal = 0.0, noise = 0.0;
    for (std::size_t i = 0; i < clean.size(); ++i) {
        signal += clean[i] * clean[i];
        const double d = test[i] - clean[i];
        noise += d * d;
    }
    if (signal == 0.0) throw InvalidInput("snr: clean reference has zero energy");
    if (noise == 0.0) return SnrMeasure::from_ratio(std::numeric_limits<double>::infinity());
    return SnrMeasure::from_ratio(signal / noise);
}

SnrMeasure snr(const Trace& clean, const Trace& test) { return snr(clean.samples(), test.samples()); }

SnrMeasure snr(const Radargram& clean, const Radargram& test) {
    if (clean.trace_count() != test.trace_count() || clean.samples_per_trace() != test.samples_per_trace())
        throw InvalidInput("snr: clean and test shapes differ");
    double signal = 0.0, noise = 0.0;
    for (std::size_t t = 0; t < clean.trace_count(); ++t) {
        const auto c = clean[t].samples();
        const auto s = test[t].samples();
        for (std::size_t i = 0; i < c.size(); ++i) {
            signal += c[i] * c[i];
            noise += (s[i] - c[i]) * (s[i] - c[i]);
        }
    }
    if (signal == 0.0) throw InvalidInput("snr: clean reference has zero energy");
    if (noise == 0.0) return SnrMeasure::from_ratio(std::numeric_limits<double>::infinity());
    return SnrMeasure::from_ratio(signal / noise);
}

Radargram add_noise(const Radargram& clean, double target_db, std::uint64_t seed) {
    if (clean.empty()) throw InvalidInput("add_noise: radargram has no traces");
    if (!std::isfinite(target_db)) throw InvalidInput("add_noise: target SNR must be finite");
    Rng rng(seed);
    std::vector<std::vector<double>> noise(clean.trace_count());
    double signal = 0.0, noise_energy = 0.0;
    for (std::size_t t = 0; t < clean.trace_count(); ++t) {
        noise[t].resize(clean.samples_per_trace());
        for (auto& v : noise[t]) {
            v = rng.normal();
            noise_energy += v * v;
        }
        signal += clean[t].energy();
    }
    if (signal == 0.0) throw InvalidInput("add_noise: clean signal has zero energy");
    const double target_ratio = std::pow(10.0, target_db / 10.0);
    const double scale = std::sqrt(signal / (target_ratio * noise_energy));
    std::vector<Trace> out;
    out.reserve(clean.trace_count());
    for (std::size_t t = 0; t < clean.trace_count(); ++t) {
        const auto c = clean[t].samples();
        std::vector<double> s(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) s[i] = c[i] + scale * noise[t][i];
        out.push_back(clean[t].with_samples(std::move(s)));
    }
    return Radargram(std::move(out), clean.dx_m());
}

Trace add_noise(const Trace& clean, double target_db, std::uint64_t seed) {
    return add_noise(Radargram({clean}, 0.0), target_db, seed)[0];
}

std::string method_name(const MethodSpec& m) {
    struct Visitor {
        std::string operator()(const VmdMethod&) const { return "vmd"; }
        std::string operator()(const EemdMethod&) const { return "eemd"; }
        std::string operator()(const DwtMethod&) const { return "dwt"; }
    };
    return std::visit(Visitor{}, m);
}

Radargram run_method(const MethodSpec& m, const Radargram& noisy, Exec exec) {
    if (noisy.empty()) throw InvalidInput("run_method: radargram has no traces");
    if (const auto* v = std::get_if<VmdMethod>(&m)) return denoise_radargram(noisy, v->config, exec).output;

    std::vector<Trace> out;
    out.reserve(noisy.trace_count());
    for (std::size_t t = 0; t < noisy.trace_count(); ++t) {
        if (const auto* e = std::get_if<EemdMethod>(&m)) {
            try {
                out.push_back(eemd_denoise(noisy[t], e->emd, e->gate, exec).output);
            } catch (const EmptySelection&) {
                out.push_back(noisy[t]);  // same pass-through policy as the VMD batch path
            }
        } else {
            out.push_back(dwt_denoise(noisy[t], std::get<DwtMethod>(m).config));
        }
    }
    return Radargram(std::move(out), noisy.dx_m());
}

std::vector<ComparisonRow> compare_methods(const Radargram& clean, const Radargram& noisy,
                                           std::span<const MethodSpec> methods, std::uint64_t seed, Exec exec) {
    const double input_db = methods.empty() ? 0.0 : snr(clean, noisy).db;
    std::vector<ComparisonRow> rows;
    for (const auto& spec : methods) {
        MethodSpec m = spec;
        if (auto* e = std::get_if<EemdMethod>(&m)) e->emd.seed = seed;
        ComparisonRow row;
        row.method = method_name(m);
        row.seed = seed;
        row.input_snr_db = input_db;
        const auto start = std::chrono::steady_clock::now();
        try {
            const Radargram out = run_method(m, noisy, exec);
            row.output_snr_db = snr(clean, out).db;
        } catch (const std::exception& ex) {
            row.output_snr_db = std::numeric_limits<double>::quiet_NaN();
            row.error = ex.what();
        }
        row.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ComparisonRow& a, const ComparisonRow& b) { return a.method < b.method; });
    return rows;
}

void write_comparison_csv(std::ostream& os, std::span<const ComparisonRow> rows) {
    os << "method,seed,input_snr_db,output_snr_db,runtime_ms\n";
    const auto flags = os.flags();
    const auto prec = os.precision();
    for (const auto& r : rows) {
        os << r.method << ',' << r.seed << ',' << std::setprecision(17) << r.input_snr_db << ','
           << r.output_snr_db << ',' << std::fixed << std::setprecision(3) << r.runtime_ms << '\n';
        os.flags(flags);
    }
    os.precision(prec);
}

}  // namespace gpr
