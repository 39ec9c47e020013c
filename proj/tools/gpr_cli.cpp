// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors
//
// gpr: command-line front end. Exit codes: 0 ok, 1 usage, 2 data, 3 numerical.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpr/denoise.hpp"
#include "gpr/error.hpp"
#include "gpr/eval.hpp"
#include "gpr/fdtd.hpp"
#include "gpr/io.hpp"
#include "gpr/synth.hpp"
#include "gpr/vmd.hpp"

namespace {

using json = nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

// Flag-level problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool has_ext(const std::string& path, const char* ext) {
    return std::filesystem::path(path).extension() == ext;
}

gpr::Radargram load(const std::string& path, const std::optional<double>& dt, const std::optional<double>& dx) {
    if (has_ext(path, ".csv")) {
        if (!dt) throw UsageError("reading CSV '" + path + "' needs --dt");
        return gpr::io::import_csv(path, *dt, dx.value_or(0.0));
    }
    return gpr::io::read_radargram(path);
}

void store(const gpr::Radargram& r, const std::string& path) {
    if (has_ext(path, ".csv"))
        gpr::io::export_csv(r, path);
    else
        gpr::io::write_radargram(r, path);
}

std::string fmt_db(double db) {
    if (std::isinf(db)) return db > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", db);
    return buf;
}

// VMD + gate flags shared by decompose, denoise and compare.
struct VmdFlags {
    int modes = gpr::VmdConfig{}.modes;
    double alpha = gpr::VmdConfig{}.alpha;
    double tau = gpr::VmdConfig{}.tau;
    double tol = gpr::VmdConfig{}.tol;
    int max_iter = gpr::VmdConfig{}.max_iter;
    std::string init = "uniform";
    std::uint64_t seed = 0;

    void add(CLI::App* app, bool with_seed = true) {
        app->add_option("--modes", modes, "number of modes K")->capture_default_str();
        app->add_option("--alpha", alpha, "bandwidth penalty")->capture_default_str();
        app->add_option("--tau", tau, "dual ascent step")->capture_default_str();
        app->add_option("--tol", tol, "convergence tolerance")->capture_default_str();
        app->add_option("--max-iter", max_iter, "iteration cap")->capture_default_str();
        app->add_option("--init", init, "center frequency init")
            ->check(CLI::IsMember({"uniform", "zero", "random"}))
            ->capture_default_str();
        if (with_seed) app->add_option("--seed", seed, "seed for --init random")->capture_default_str();
    }

    gpr::VmdConfig config() const {
        gpr::VmdConfig c;
        c.modes = modes;
        c.alpha = alpha;
        c.tau = tau;
        c.tol = tol;
        c.max_iter = max_iter;
        c.omega_init = init == "zero" ? gpr::OmegaInit::zero
                       : init == "random" ? gpr::OmegaInit::random
                                          : gpr::OmegaInit::uniform;
        c.seed = seed;
        return c;
    }
};

struct GateFlags {
    int m = gpr::EntropyGate{}.sampen.m;
    double r = gpr::EntropyGate{}.sampen.r;
    double threshold = gpr::EntropyGate{}.threshold;
    std::string strategy = "prefix";

    void add(CLI::App* app) {
        app->add_option("--sampen-m", m, "sample entropy template length")->capture_default_str();
        app->add_option("--sampen-r", r, "sample entropy tolerance, fraction of std")->capture_default_str();
        app->add_option("--threshold", threshold, "entropy threshold R")->capture_default_str();
        app->add_option("--strategy", strategy, "mode gate strategy")
            ->check(CLI::IsMember({"prefix", "per-mode"}))
            ->capture_default_str();
    }

    gpr::EntropyGate gate() const {
        gpr::EntropyGate g;
        g.sampen = gpr::SampEnParams::relative(m, r);
        g.threshold = threshold;
        g.strategy = strategy == "per-mode" ? gpr::GateStrategy::per_mode : gpr::GateStrategy::prefix;
        return g;
    }
};

// Validation failures on flag-derived configs are usage errors, not data errors.
template <typename Cfg>
void check_config(const Cfg& c) {
    try {
        c.validate();
    } catch (const gpr::InvalidInput& e) {
        throw UsageError(e.what());
    }
}

json report_json(const gpr::DenoiseReport& r, std::size_t index) {
    json j;
    j["trace"] = index;
    json ent = json::array();
    for (double e : r.entropies) ent.push_back(std::isfinite(e) ? json(e) : json(nullptr));
    j["entropies"] = ent;
    j["retained"] = r.retained;
    j["retained_count"] = r.retained_count;
    j["omegas_mhz"] = r.omegas_mhz;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    if (r.snr_before_db) j["snr_before_db"] = *r.snr_before_db;
    if (r.snr_after_db) j["snr_after_db"] = *r.snr_after_db;
    if (r.error) j["error"] = *r.error;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GPR de-noising toolkit: VMD with sample-entropy mode gating"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string in, out, ref, report_path, config, methods = "vmd,eemd,dwt";
    std::optional<double> dt, dx;
    int jobs = 0;
    std::uint64_t seed = 0;
    double snr_db = 0.0, clip = 99.0;

    // ricker
    gpr::RickerSpec rs;
    auto* ricker = app.add_subcommand("ricker", "synthesize a Ricker wavelet trace");
    ricker->add_option("--fc", rs.fc_mhz, "center frequency, MHz")->capture_default_str();
    ricker->add_option("--samples", rs.n, "sample count")->capture_default_str();
    ricker->add_option("--dt", rs.dt_ns, "sampling interval, ns")->capture_default_str();
    ricker->add_option("--t0", rs.t0_ns, "peak time, ns")->capture_default_str();
    ricker->add_option("--out", out, "output file")->required();

    // forward
    double cell = 0.0;
    int traces = 0;
    auto* forward = app.add_subcommand("forward", "2D FDTD forward model (default: the built-in void-in-sand section)");
    forward->add_option("--config", config, "model file")->check(CLI::ExistingFile);
    forward->add_option("--fc", rs.fc_mhz, "override source center frequency, MHz");
    forward->add_option("--cell", cell, "resample to this cell size, m (keeps the survey span)");
    forward->add_option("--traces", traces, "trace count when resampling");
    forward->add_option("--out", out, "output radargram")->required();
    forward->add_option("--jobs", jobs, "worker threads (0: all)");

    // addnoise
    auto* addnoise = app.add_subcommand("addnoise", "add white Gaussian noise at an exact SNR");
    addnoise->add_option("--in", in, "clean input")->required();
    addnoise->add_option("--out", out, "noisy output")->required();
    addnoise->add_option("--snr-db", snr_db, "target SNR, dB")->required();
    addnoise->add_option("--seed", seed, "noise seed")->capture_default_str();
    addnoise->add_option("--dt", dt, "sampling interval for CSV input, ns");
    addnoise->add_option("--dx", dx, "trace spacing for CSV input, m");

    // decompose
    VmdFlags dec_vmd;
    auto* decompose = app.add_subcommand("decompose", "VMD of every trace; writes one file per mode plus the residual");
    decompose->add_option("--in", in, "input")->required();
    decompose->add_option("--out", out, "output stem: <stem>.mode<k>.<ext>, <stem>.residual.<ext>")->required();
    decompose->add_option("--dt", dt, "sampling interval for CSV input, ns");
    decompose->add_option("--dx", dx, "trace spacing for CSV input, m");
    decompose->add_option("--jobs", jobs, "worker threads (0: all)");
    dec_vmd.add(decompose);

    // denoise
    VmdFlags den_vmd;
    GateFlags den_gate;
    auto* denoise = app.add_subcommand("denoise", "VMD + sample-entropy gate de-noising");
    denoise->add_option("--in", in, "noisy input")->required();
    denoise->add_option("--out", out, "de-noised output")->required();
    denoise->add_option("--ref", ref, "clean reference (adds SNR fields to the report)");
    denoise->add_option("--report", report_path, "JSON report (default: <out>.json)");
    denoise->add_option("--dt", dt, "sampling interval for CSV input, ns");
    denoise->add_option("--dx", dx, "trace spacing for CSV input, m");
    denoise->add_option("--jobs", jobs, "worker threads (0: all)");
    den_vmd.add(denoise);
    den_gate.add(denoise);

    // snr
    auto* snr = app.add_subcommand("snr", "SNR of a test radargram against its clean reference");
    snr->add_option("--ref", ref, "clean reference")->required();
    snr->add_option("--in", in, "test radargram")->required();
    snr->add_option("--dt", dt, "sampling interval for CSV input, ns");
    snr->add_option("--dx", dx, "trace spacing for CSV input, m");

    // compare
    VmdFlags cmp_vmd;
    GateFlags cmp_gate;
    int ensemble = gpr::EmdConfig{}.ensemble_size;
    double eemd_threshold = gpr::EemdMethod{}.gate.threshold;
    int levels = gpr::DwtConfig{}.levels;
    std::string wavelet = "db4";
    auto* compare = app.add_subcommand("compare", "run VMD, EEMD and DWT de-noising and tabulate output SNR");
    compare->add_option("--ref", ref, "clean reference")->required();
    compare->add_option("--in", in, "noisy input")->required();
    compare->add_option("--out", out, "CSV table")->required();
    compare->add_option("--methods", methods, "comma list of vmd, eemd, dwt")->capture_default_str();
    compare->add_option("--seed", seed, "seed recorded in the table and used for EEMD")->capture_default_str();
    compare->add_option("--ensemble", ensemble, "EEMD ensemble size")->capture_default_str();
    compare->add_option("--eemd-threshold", eemd_threshold, "entropy threshold R for EEMD IMFs")
        ->capture_default_str();
    compare->add_option("--levels", levels, "DWT levels")->capture_default_str();
    compare->add_option("--wavelet", wavelet, "DWT wavelet")
        ->check(CLI::IsMember({"db1", "db2", "db3", "db4"}))
        ->capture_default_str();
    compare->add_option("--dt", dt, "sampling interval for CSV input, ns");
    compare->add_option("--dx", dx, "trace spacing for CSV input, m");
    compare->add_option("--jobs", jobs, "worker threads (0: all)");
    cmp_vmd.add(compare, false);
    cmp_gate.add(compare);

    // render
    auto* render = app.add_subcommand("render", "grayscale B-scan (binary PGM)");
    render->add_option("--in", in, "input")->required();
    render->add_option("--out", out, "output .pgm")->required();
    render->add_option("--clip", clip, "clip percentile of |amplitude|")->capture_default_str();
    render->add_option("--dt", dt, "sampling interval for CSV input, ns");
    render->add_option("--dx", dx, "trace spacing for CSV input, m");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    const gpr::Exec exec{jobs};

    try {
        if (jobs < 0) throw UsageError("--jobs must be >= 0");

        if (*ricker) {
            check_config(rs);
            const gpr::Trace t = gpr::ricker(rs);
            store(gpr::Radargram({t}, 0.0), out);
            std::cout << "ricker: fc " << rs.fc_mhz << " MHz, " << rs.n << " samples, dt " << rs.dt_ns << " ns -> "
                      << out << '\n';
        } else if (*forward) {
            gpr::ForwardModel model = config.empty() ? gpr::void_in_sand_model() : gpr::load_model(config);
            if (forward->count("--fc")) model.fc_mhz = rs.fc_mhz;
            if (cell > 0.0 || traces > 0)
                model = model.resampled(cell > 0.0 ? cell : model.cell_m, traces > 0 ? traces : model.trace_count);
            try {
                model.validate();
            } catch (const gpr::InvalidModel& e) {
                throw UsageError(e.what());
            }
            for (const auto& w : model.warnings()) std::cerr << "warning: " << w << '\n';
            const gpr::Radargram r = gpr::fdtd_forward(model, exec);
            store(r, out);
            std::cout << "forward: " << r.trace_count() << " traces x " << r.samples_per_trace() << " samples, dt "
                      << r.dt_ns() << " ns -> " << out << '\n';
        } else if (*addnoise) {
            const gpr::Radargram clean = load(in, dt, dx);
            const gpr::Radargram noisy = gpr::add_noise(clean, snr_db, seed);
            store(noisy, out);
            std::cout << "addnoise: target " << fmt_db(snr_db) << " dB, measured " << fmt_db(gpr::snr(clean, noisy).db)
                      << " dB (seed " << seed << ") -> " << out << '\n';
        } else if (*decompose) {
            const gpr::VmdConfig cfg = dec_vmd.config();
            check_config(cfg);
            const gpr::Radargram r = load(in, dt, dx);
            const auto n = static_cast<std::ptrdiff_t>(r.trace_count());
            std::vector<std::optional<gpr::VmdResult>> slots(r.trace_count());
            std::vector<std::string> failures(r.trace_count());
#pragma omp parallel for schedule(dynamic, 1) num_threads(gpr::resolve_jobs(exec))
            for (std::ptrdiff_t t = 0; t < n; ++t) {
                try {
                    slots[static_cast<std::size_t>(t)] = gpr::decompose(r[static_cast<std::size_t>(t)], cfg);
                } catch (const std::exception& e) {
                    failures[static_cast<std::size_t>(t)] = e.what();
                }
            }
            for (std::size_t t = 0; t < failures.size(); ++t)
                if (!failures[t].empty()) throw gpr::InvalidInput("trace " + std::to_string(t) + ": " + failures[t]);
            std::vector<gpr::VmdResult> res;
            res.reserve(slots.size());
            for (auto& s : slots) res.push_back(std::move(*s));

            const std::filesystem::path stem(out);
            const std::string ext = stem.has_extension() ? stem.extension().string() : std::string(".gprd");
            const std::string base = (stem.parent_path() / stem.stem()).string();
            int converged = 0;
            for (const auto& x : res) converged += x.converged ? 1 : 0;
            for (int k = 0; k < cfg.modes; ++k) {
                std::vector<gpr::Trace> traces_k;
                for (const auto& x : res) traces_k.push_back(x.modes[static_cast<std::size_t>(k)]);
                store(gpr::Radargram(std::move(traces_k), r.dx_m()), base + ".mode" + std::to_string(k + 1) + ext);
            }
            std::vector<gpr::Trace> resid;
            for (const auto& x : res) resid.push_back(x.residual);
            store(gpr::Radargram(std::move(resid), r.dx_m()), base + ".residual" + ext);
            std::cout << "decompose: " << r.trace_count() << " traces, K " << cfg.modes << ", " << converged
                      << " converged";
            if (r.trace_count() == 1) {
                std::cout << ", omegas MHz";
                for (double w : res[0].omegas_mhz) std::cout << ' ' << w;
            }
            std::cout << " -> " << base << ".mode*" << ext << '\n';
        } else if (*denoise) {
            gpr::DenoiseConfig cfg{den_vmd.config(), den_gate.gate()};
            check_config(cfg);
            const gpr::Radargram noisy = load(in, dt, dx);
            std::optional<gpr::Radargram> clean;
            if (!ref.empty()) clean = load(ref, dt, dx);
            const auto result = gpr::denoise_radargram(noisy, cfg, exec, clean ? &*clean : nullptr);

            json rep;
            rep["config"] = {{"modes", cfg.vmd.modes},          {"alpha", cfg.vmd.alpha},
                             {"tau", cfg.vmd.tau},              {"sampen_m", cfg.gate.sampen.m},
                             {"sampen_r", cfg.gate.sampen.r},   {"threshold", cfg.gate.threshold},
                             {"strategy", den_gate.strategy}};
            rep["traces"] = json::array();
            std::size_t passed = 0;
            for (std::size_t t = 0; t < result.reports.size(); ++t) {
                rep["traces"].push_back(report_json(result.reports[t], t));
                if (result.reports[t].error) {
                    ++passed;
                    std::cerr << "warning: trace " << t << ": " << *result.reports[t].error << "; passed through\n";
                }
            }
            std::optional<double> before, after;
            if (clean) {
                before = gpr::snr(*clean, noisy).db;
                after = gpr::snr(*clean, result.output).db;
                rep["snr_before_db"] = *before;
                rep["snr_after_db"] = *after;
            }
            const std::string rp = report_path.empty() ? out + ".json" : report_path;
            store(result.output, out);
            gpr::io::write_file_atomic(rp, [&](std::ostream& os) { os << rep.dump(2) << '\n'; });
            std::cout << "denoise: " << noisy.trace_count() << " traces, " << passed << " passed through";
            if (clean) std::cout << ", SNR " << fmt_db(*before) << " dB -> " << fmt_db(*after) << " dB";
            std::cout << " -> " << out << '\n';
        } else if (*snr) {
            const gpr::Radargram clean = load(ref, dt, dx);
            const gpr::Radargram test = load(in, dt, dx);
            const auto s = gpr::snr(clean, test);
            std::cout << "snr: " << fmt_db(s.db) << " dB (ratio " << s.ratio << ")\n";
        } else if (*compare) {
            std::vector<gpr::MethodSpec> specs;
            std::stringstream ss(methods);
            for (std::string name; std::getline(ss, name, ',');) {
                if (name == "vmd") {
                    gpr::DenoiseConfig c{cmp_vmd.config(), cmp_gate.gate()};
                    check_config(c);
                    specs.emplace_back(gpr::VmdMethod{c});
                } else if (name == "eemd") {
                    gpr::EemdMethod m;
                    m.emd.ensemble_size = ensemble;
                    m.gate = cmp_gate.gate();
                    m.gate.threshold = eemd_threshold;
                    check_config(m.emd);
                    check_config(m.gate);
                    specs.emplace_back(m);
                } else if (name == "dwt") {
                    gpr::DwtMethod m;
                    m.config.levels = levels;
                    m.config.wavelet = gpr::parse_wavelet(wavelet);
                    specs.emplace_back(m);
                } else {
                    throw UsageError("unknown method '" + name + "' (expected vmd, eemd, dwt)");
                }
            }
            if (specs.empty()) throw UsageError("--methods is empty");
            const gpr::Radargram clean = load(ref, dt, dx);
            const gpr::Radargram noisy = load(in, dt, dx);
            const auto rows = gpr::compare_methods(clean, noisy, specs, seed, exec);
            gpr::io::write_file_atomic(out, [&](std::ostream& os) { gpr::write_comparison_csv(os, rows); });
            std::cout << "compare: input " << fmt_db(rows.front().input_snr_db) << " dB";
            int failed = 0;
            for (const auto& r : rows) {
                std::cout << ", " << r.method << ' ' << (r.error.empty() ? fmt_db(r.output_snr_db) + " dB" : "failed");
                if (!r.error.empty()) {
                    std::cerr << "error: " << r.method << ": " << r.error << '\n';
                    ++failed;
                }
            }
            std::cout << " -> " << out << '\n';
            if (failed) return kNumerical;
        } else if (*render) {
            const gpr::Radargram r = load(in, dt, dx);
            gpr::io::render_bscan(r, out, clip);
            std::cout << "render: " << r.trace_count() << " x " << r.samples_per_trace() << " -> " << out << '\n';
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const gpr::Undefined& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const gpr::EmptySelection& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const gpr::Error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kData;
    }
    return kOk;
}
