// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/denoise.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "gpr/error.hpp"
#include "gpr/eval.hpp"

namespace gpr {

void EntropyGate::validate() const {
    sampen.validate();
    if (!(threshold > 0.0)) throw InvalidInput("entropy gate: threshold R must be positive");
}

ModeSelection apply_gate(std::span<const double> entropies, const EntropyGate& gate) {
    gate.validate();
    ModeSelection sel;
    sel.entropies.assign(entropies.begin(), entropies.end());
    sel.retained.assign(entropies.size(), false);
    for (std::size_t k = 0; k < entropies.size(); ++k) {
        const bool pass = entropies[k] <= gate.threshold;
        if (!pass && gate.strategy == GateStrategy::prefix) break;
        if (pass) {
            sel.retained[k] = true;
            ++sel.retained_count;
        }
    }
    if (sel.retained_count == 0) {
        std::ostringstream msg;
        msg << "entropy gate rejected all " << entropies.size() << " components (R = " << gate.threshold << ")";
        throw EmptySelection(msg.str(), sel.entropies);
    }
    return sel;
}

std::vector<double> component_entropies(std::span<const Trace> components, const SampEnParams& p, Exec exec) {
    std::vector<double> se;
    se.reserve(components.size());
    for (const auto& c : components) {
        try {
            se.push_back(sample_entropy(c.samples(), p, exec));
        } catch (const Undefined&) {
            se.push_back(std::numeric_limits<double>::infinity());
        }
    }
    return se;
}

ModeSelection select_modes(const VmdResult& result, const EntropyGate& gate, Exec exec) {
    const auto se = component_entropies(result.modes, gate.sampen, exec);
    return apply_gate(se, gate);
}

DenoisedTrace denoise_trace(const Trace& t, const DenoiseConfig& cfg, Exec exec) {
    cfg.validate();
    VmdResult vmd = decompose(t, cfg.vmd);
    ModeSelection sel = select_modes(vmd, cfg.gate, exec);

    std::vector<double> out(t.size(), 0.0);
    for (std::size_t k = 0; k < vmd.modes.size(); ++k) {
        if (!sel.retained[k]) continue;
        const auto m = vmd.modes[k].samples();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += m[i];
    }

    DenoiseReport report;
    report.entropies = std::move(sel.entropies);
    report.retained = std::move(sel.retained);
    report.retained_count = sel.retained_count;
    report.omegas_mhz = std::move(vmd.omegas_mhz);
    report.iterations = vmd.iterations;
    report.converged = vmd.converged;
    return DenoisedTrace{t.with_samples(std::move(out)), std::move(report)};
}

namespace {

DenoisedTrace denoise_one(const Radargram& r, std::size_t i, const DenoiseConfig& cfg, const Radargram* reference) {
    const Trace& in = r[i];
    DenoisedTrace result{in, {}};
    try {
        result = denoise_trace(in, cfg, Exec::serial());
    } catch (const EmptySelection& e) {
        result.report.entropies = e.entropies();
        result.report.retained.assign(e.entropies().size(), false);
        result.report.error = "trace " + std::to_string(i) + ": " + e.what();
    }
    if (reference != nullptr && (*reference)[i].energy() > 0.0) {
        result.report.snr_before_db = snr((*reference)[i], in).db;
        result.report.snr_after_db = snr((*reference)[i], result.output).db;
    }
    return result;
}

void check_inputs(const Radargram& r, const DenoiseConfig& cfg, const Radargram* reference) {
    if (r.empty()) throw InvalidInput("denoise: radargram has no traces");
    cfg.validate();
    if (reference != nullptr &&
        (reference->trace_count() != r.trace_count() || reference->samples_per_trace() != r.samples_per_trace()))
        throw InvalidInput("denoise: reference radargram geometry differs from input");
}

DenoisedRadargram assemble(const Radargram& r, std::vector<DenoisedTrace>& parts) {
    std::vector<Trace> traces;
    std::vector<DenoiseReport> reports;
    traces.reserve(parts.size());
    reports.reserve(parts.size());
    for (auto& p : parts) {
        traces.push_back(std::move(p.output));
        reports.push_back(std::move(p.report));
    }
    return DenoisedRadargram{Radargram(std::move(traces), r.dx_m()), std::move(reports)};
}

}  // namespace

DenoisedRadargram denoise_radargram_reference(const Radargram& r, const DenoiseConfig& cfg,
                                              const Radargram* reference) {
    check_inputs(r, cfg, reference);
    std::vector<DenoisedTrace> parts;
    parts.reserve(r.trace_count());
    for (std::size_t i = 0; i < r.trace_count(); ++i) parts.push_back(denoise_one(r, i, cfg, reference));
    return assemble(r, parts);
}

DenoisedRadargram denoise_radargram(const Radargram& r, const DenoiseConfig& cfg, Exec exec,
                                    const Radargram* reference) {
    if (exec.is_serial()) return denoise_radargram_reference(r, cfg, reference);
    check_inputs(r, cfg, reference);
    const auto count = static_cast<std::int64_t>(r.trace_count());
    std::vector<DenoisedTrace> parts(r.trace_count(), DenoisedTrace{r[0], {}});
    std::vector<std::string> failures(r.trace_count());
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_jobs(exec))
    for (std::int64_t i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            parts[idx] = denoise_one(r, idx, cfg, reference);
        } catch (const std::exception& e) {
            failures[idx] = "trace " + std::to_string(idx) + ": " + e.what();
        }
    }
    for (const auto& f : failures)
        if (!f.empty()) throw Error(f);
    return assemble(r, parts);
}

}  // namespace gpr
