// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/fdtd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

#include "gpr/error.hpp"
#include "gpr/synth.hpp"

namespace gpr {
namespace {

constexpr double kC0 = 299792458.0;  // m/s
constexpr double kEps0 = 8.8541878128e-12;
constexpr double kMu0 = 1.25663706212e-6;
constexpr double kEta0 = 376.730313668;

bool inside(const Block& b, double x, double z, double tol) {
    if (const auto* r = std::get_if<RectBlock>(&b))
        return x >= r->x0 - tol && x <= r->x1 + tol && z >= r->z0 - tol && z <= r->z1 + tol;
    const auto& c = std::get<CircleBlock>(b);
    const double dx = x - c.cx, dz = z - c.cz;
    return dx * dx + dz * dz <= c.radius * c.radius + tol;
}

const Material& block_material(const Block& b) {
    return std::visit([](const auto& blk) -> const Material& { return blk.material; }, b);
}

}  // namespace

Material ForwardModel::material_at(double x_m, double z_m) const {
    const double tol = 1e-6 * cell_m;
    Material m = background;
    for (const auto& b : blocks)
        if (inside(b, x_m, z_m, tol)) m = block_material(b);
    return m;
}

double ForwardModel::time_step_ns() const { return courant * cell_m / (kLightSpeed * std::numbers::sqrt2); }
double ForwardModel::source_delay_ns() const { return 1.2e3 / fc_mhz; }
double ForwardModel::source_cutoff_ns() const { return 3.0e3 / fc_mhz; }

void ForwardModel::validate() const {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(width_m) || !positive(depth_m) || !positive(cell_m)) throw InvalidModel("model: sizes must be positive");
    if (cell_m > width_m || cell_m > depth_m) throw InvalidModel("model: cell larger than the section");
    if (!(courant > 0.0 && courant <= 1.0))
        throw InvalidModel("model: time step violates the 2D stability bound dt <= dx / (c sqrt 2)");
    if (!positive(fc_mhz)) throw InvalidModel("model: source frequency must be positive");
    if (!positive(time_window_ns)) throw InvalidModel("model: time window must be positive");
    if (samples < 2) throw InvalidModel("model: need at least 2 output samples");
    if (pml_cells < 1 || pml_order < 1) throw InvalidModel("model: PML needs at least one cell and order >= 1");
    if (trace_count < 1) throw InvalidModel("model: need at least one trace");
    if (trace_count > 1 && !positive(trace_spacing_m)) throw InvalidModel("model: trace spacing must be positive");
    if (!(offset_m >= 0.0)) throw InvalidModel("model: negative antenna offset");
    auto check_material = [](const Material& m) {
        if (!(m.eps_r >= 1.0) || !std::isfinite(m.eps_r)) throw InvalidModel("model: eps_r must be >= 1");
        if (!(m.sigma >= 0.0) || !std::isfinite(m.sigma)) throw InvalidModel("model: sigma must be >= 0");
    };
    check_material(background);
    for (const auto& b : blocks) check_material(block_material(b));

    const double tol = 1e-9;
    for (int i = 0; i < trace_count; ++i) {
        const double c = trace_center_m(i);
        for (double x : {c - 0.5 * offset_m, c + 0.5 * offset_m}) {
            if (x < -tol || x > width_m + tol)
                throw InvalidModel("model: antenna of trace " + std::to_string(i) + " lies outside the section");
        }
    }
    if (antenna_z_m < -tol || antenna_z_m > depth_m + tol) throw InvalidModel("model: antenna depth outside the section");
}

std::vector<std::string> ForwardModel::warnings() const {
    double max_eps = background.eps_r;
    for (const auto& b : blocks) max_eps = std::max(max_eps, block_material(b).eps_r);
    const double lambda_min = kLightSpeed / std::sqrt(max_eps) / (2.0 * fc_mhz * 1e-3);  // metres
    std::vector<std::string> w;
    if (cell_m > lambda_min / 10.0) {
        std::ostringstream msg;
        msg << "cell " << cell_m << " m exceeds lambda_min/10 = " << lambda_min / 10.0 << " m; expect dispersion";
        w.push_back(msg.str());
    }
    return w;
}

ForwardModel ForwardModel::resampled(double new_cell, int traces) const {
    ForwardModel m = *this;
    const double span = trace_spacing_m * (trace_count - 1);
    m.cell_m = new_cell;
    m.trace_count = traces;
    m.trace_spacing_m = traces > 1 ? span / (traces - 1) : 0.0;
    m.antenna_z_m = std::floor(antenna_z_m / new_cell + 1e-9) * new_cell;
    return m;
}

ForwardModel void_in_sand_model() {
    ForwardModel m;
    m.width_m = 2.5;
    m.depth_m = 0.45;
    m.cell_m = 0.0025;
    m.background = Material{1.0, 1e-10};                              // air
    m.blocks.push_back(RectBlock{0.0, 0.15, 2.5, 0.45, {3.0, 1e-4}});   // dry sand
    m.blocks.push_back(CircleBlock{1.25, 0.30, 0.0375, {1.0, 1e-10}});  // air-filled void
    m.fc_mhz = 900.0;
    m.offset_m = 0.025;
    m.trace_count = 125;
    m.trace_spacing_m = 0.019;
    m.first_trace_m = 1.25 - 62 * 0.019;
    m.antenna_z_m = 0.15 - m.cell_m;  // one cell above the ground surface
    m.time_window_ns = 12.0;
    m.samples = 512;
    m.pml_cells = 10;
    m.pml_order = 3;
    m.courant = 0.95;
    return m;
}

namespace {

// CPML stretching along one axis (kappa = 1, alpha = 0): b = exp(-sigma dt / eps0), c = b - 1.
struct PmlAxis {
    std::vector<double> b_e, c_e;  // at integer nodes
    std::vector<double> b_h, c_h;  // at half nodes (i + 1/2)

    PmlAxis(int n, int cells, int order, double d, double dt) : b_e(n, 1.0), c_e(n, 0.0), b_h(n, 1.0), c_h(n, 0.0) {
        const double sigma_max = 0.8 * (order + 1) / (kEta0 * d);
        auto depth = [&](double p) {
            const double left = static_cast<double>(cells) - p;
            const double right = p - static_cast<double>(n - 1 - cells);
            const double v = std::max(left, right) / static_cast<double>(cells);
            return std::clamp(v, 0.0, 1.0);
        };
        for (int i = 0; i < n; ++i) {
            const double se = sigma_max * std::pow(depth(i), order);
            const double sh = sigma_max * std::pow(depth(i + 0.5), order);
            b_e[i] = std::exp(-se * dt / kEps0);
            c_e[i] = b_e[i] - 1.0;
            b_h[i] = std::exp(-sh * dt / kEps0);
            c_h[i] = b_h[i] - 1.0;
        }
    }
};

}  // namespace

ShotRecord simulate_shot(const ForwardModel& model, Antenna tx, Antenna rx, ShotOptions options) {
    model.validate();
    const double d = model.cell_m;
    const int P = model.pml_cells;
    const int nx = static_cast<int>(std::lround(model.width_m / d)) + 1 + 2 * P;
    const int nz = static_cast<int>(std::lround(model.depth_m / d)) + 1 + 2 * P;
    const double dt = model.time_step_ns() * 1e-9;
    const auto idx = [nz](int i, int k) { return static_cast<std::size_t>(i) * static_cast<std::size_t>(nz) + k; };

    auto node = [&](Antenna a, const char* what) {
        if (a.x_m < -1e-9 || a.x_m > model.width_m + 1e-9 || a.z_m < -1e-9 || a.z_m > model.depth_m + 1e-9)
            throw InvalidModel(std::string("model: ") + what + " antenna outside the section");
        return std::pair<int, int>{P + static_cast<int>(std::lround(a.x_m / d)), P + static_cast<int>(std::lround(a.z_m / d))};
    };
    const auto [txi, txk] = node(tx, "transmitter");
    const auto [rxi, rxk] = node(rx, "receiver");

    const std::size_t cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(nz);
    std::vector<double> ca(cells), cb(cells), eps(cells);
    for (int i = 0; i < nx; ++i) {
        const double x = std::clamp((i - P) * d, 0.0, model.width_m);
        for (int k = 0; k < nz; ++k) {
            const double z = std::clamp((k - P) * d, 0.0, model.depth_m);
            const Material m = model.material_at(x, z);
            const double e = kEps0 * m.eps_r;
            const double loss = m.sigma * dt / (2.0 * e);
            ca[idx(i, k)] = (1.0 - loss) / (1.0 + loss);
            cb[idx(i, k)] = (dt / e) / (1.0 + loss);
            eps[idx(i, k)] = e;
        }
    }

    const PmlAxis px(nx, P, model.pml_order, d, dt);
    const PmlAxis pz(nz, P, model.pml_order, d, dt);

    std::vector<double> ey(cells, 0.0), hx(cells, 0.0), hz(cells, 0.0);
    std::vector<double> psi_hx(cells, 0.0), psi_hz(cells, 0.0), psi_ex(cells, 0.0), psi_ez(cells, 0.0);
    std::vector<double> hx_old, hz_old;

    const double h_coef = dt / kMu0;
    const double inv_d = 1.0 / d;
    const int steps = static_cast<int>(std::ceil(model.time_window_ns * 1e-9 / dt));
    const double t_delay = model.source_delay_ns();
    const double t_cut = model.source_cutoff_ns();

    ShotRecord rec;
    rec.dt_ns = dt * 1e9;
    rec.receiver.reserve(static_cast<std::size_t>(steps));

    for (int n = 0; n < steps; ++n) {
        const double t_now_ns = n * rec.dt_ns;
        const bool sample_energy =
            options.energy_stride > 0 && t_now_ns >= t_cut && (n % options.energy_stride == 0);
        if (sample_energy) {
            hx_old = hx;
            hz_old = hz;
        }

        // H^{n+1/2}: Hx at (i, k+1/2), Hz at (i+1/2, k).
        for (int i = 0; i < nx; ++i) {
            for (int k = 0; k + 1 < nz; ++k) {
                const std::size_t c = idx(i, k);
                const double de = (ey[c + 1] - ey[c]) * inv_d;
                psi_hx[c] = pz.b_h[k] * psi_hx[c] + pz.c_h[k] * de;
                hx[c] += h_coef * (de + psi_hx[c]);
            }
        }
        for (int i = 0; i + 1 < nx; ++i) {
            for (int k = 0; k < nz; ++k) {
                const std::size_t c = idx(i, k);
                const double de = (ey[idx(i + 1, k)] - ey[c]) * inv_d;
                psi_hz[c] = px.b_h[i] * psi_hz[c] + px.c_h[i] * de;
                hz[c] -= h_coef * (de + psi_hz[c]);
            }
        }

        if (sample_energy) {
            double w = 0.0;
            for (std::size_t c = 0; c < cells; ++c)
                w += eps[c] * ey[c] * ey[c] + kMu0 * (hx_old[c] * hx[c] + hz_old[c] * hz[c]);
            rec.energy.push_back(0.5 * w * d * d);
        }

        // E^{n+1}, PEC on the outermost nodes.
        for (int i = 1; i + 1 < nx; ++i) {
            for (int k = 1; k + 1 < nz; ++k) {
                const std::size_t c = idx(i, k);
                const double dhx = (hx[c] - hx[c - 1]) * inv_d;
                const double dhz = (hz[c] - hz[idx(i - 1, k)]) * inv_d;
                psi_ez[c] = pz.b_e[k] * psi_ez[c] + pz.c_e[k] * dhx;
                psi_ex[c] = px.b_e[i] * psi_ex[c] + px.c_e[i] * dhz;
                ey[c] = ca[c] * ey[c] + cb[c] * (dhx + psi_ez[c] - dhz - psi_ex[c]);
            }
        }

        const double t_next_ns = (n + 1) * rec.dt_ns;
        if (t_next_ns <= t_cut) ey[idx(txi, txk)] += ricker_value(model.fc_mhz, t_next_ns - t_delay);
        rec.receiver.push_back(ey[idx(rxi, rxk)]);
    }
    return rec;
}

std::vector<double> resample_shot(const ShotRecord& shot, const ForwardModel& model) {
    std::vector<double> out(static_cast<std::size_t>(model.samples), 0.0);
    const double step = model.time_window_ns / model.samples;
    const std::size_t m = shot.receiver.size();
    for (int j = 0; j < model.samples; ++j) {
        // receiver[q] is at (q + 1) dt; position 0 on this scale is t = 0 with value 0.
        const double pos = j * step / shot.dt_ns;
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const double frac = pos - static_cast<double>(lo);
        auto at = [&](std::size_t p) { return p == 0 ? 0.0 : (p - 1 < m ? shot.receiver[p - 1] : shot.receiver.back()); };
        out[static_cast<std::size_t>(j)] = (1.0 - frac) * at(lo) + frac * at(lo + 1);
    }
    return out;
}

namespace {

Trace shot_trace(const ForwardModel& model, int i) {
    const double c = model.trace_center_m(i);
    const ShotRecord shot = simulate_shot(model, Antenna{c - 0.5 * model.offset_m, model.antenna_z_m},
                                          Antenna{c + 0.5 * model.offset_m, model.antenna_z_m});
    return Trace(resample_shot(shot, model), model.time_window_ns / model.samples);
}

}  // namespace

Radargram fdtd_forward_reference(const ForwardModel& model) {
    model.validate();
    std::vector<Trace> traces;
    traces.reserve(static_cast<std::size_t>(model.trace_count));
    for (int i = 0; i < model.trace_count; ++i) traces.push_back(shot_trace(model, i));
    return Radargram(std::move(traces), model.trace_spacing_m);
}

Radargram fdtd_forward(const ForwardModel& model, Exec exec) {
    if (exec.is_serial()) return fdtd_forward_reference(model);
    model.validate();
    const Trace placeholder(std::vector<double>(static_cast<std::size_t>(model.samples), 0.0), 1.0);
    std::vector<Trace> traces(static_cast<std::size_t>(model.trace_count), placeholder);
    std::vector<std::string> failures(static_cast<std::size_t>(model.trace_count));
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_jobs(exec))
    for (int i = 0; i < model.trace_count; ++i) {
        try {
            traces[static_cast<std::size_t>(i)] = shot_trace(model, i);
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (const auto& f : failures)
        if (!f.empty()) throw InvalidModel(f);
    return Radargram(std::move(traces), model.trace_spacing_m);
}

}  // namespace gpr
