// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "gpr/error.hpp"
#include "gpr/fdtd.hpp"

namespace gpr {
namespace {

std::vector<double> numbers(const std::string& value, std::size_t expected, std::size_t line, const std::string& key) {
    std::istringstream in(value);
    std::vector<double> v;
    std::string tok;
    while (in >> tok) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("model line " + std::to_string(line) + ": '" + tok + "' is not a number", line, 0);
        }
    }
    if (v.size() != expected)
        throw ParseError("model line " + std::to_string(line) + ": '" + key + "' expects " + std::to_string(expected) +
                             " value(s)",
                         line, 0);
    return v;
}

int as_int(double v, std::size_t line) {
    if (v != static_cast<double>(static_cast<long long>(v)))
        throw ParseError("model line " + std::to_string(line) + ": expected an integer", line, 0);
    return static_cast<int>(v);
}

}  // namespace

ForwardModel parse_model(std::istream& in) {
    ForwardModel m;
    m.blocks.clear();
    bool first_trace_set = false;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const auto eq = raw.find('=');
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos)
            throw ParseError("model line " + std::to_string(line) + ": expected 'key = value'", line, 0);
        std::string key = raw.substr(0, eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        const std::string value = raw.substr(eq + 1);

        auto one = [&] { return numbers(value, 1, line, key)[0]; };
        if (key == "width") m.width_m = one();
        else if (key == "depth") m.depth_m = one();
        else if (key == "cell") m.cell_m = one();
        else if (key == "background") {
            const auto v = numbers(value, 2, line, key);
            m.background = Material{v[0], v[1]};
        } else if (key == "rect") {
            const auto v = numbers(value, 6, line, key);
            m.blocks.push_back(RectBlock{v[0], v[1], v[2], v[3], {v[4], v[5]}});
        } else if (key == "circle") {
            const auto v = numbers(value, 5, line, key);
            m.blocks.push_back(CircleBlock{v[0], v[1], v[2], {v[3], v[4]}});
        } else if (key == "fc_mhz") m.fc_mhz = one();
        else if (key == "offset") m.offset_m = one();
        else if (key == "traces") m.trace_count = as_int(one(), line);
        else if (key == "trace_spacing") m.trace_spacing_m = one();
        else if (key == "first_trace") {
            m.first_trace_m = one();
            first_trace_set = true;
        } else if (key == "antenna_z") m.antenna_z_m = one();
        else if (key == "window_ns") m.time_window_ns = one();
        else if (key == "samples") m.samples = as_int(one(), line);
        else if (key == "pml_cells") m.pml_cells = as_int(one(), line);
        else if (key == "pml_order") m.pml_order = as_int(one(), line);
        else if (key == "courant") m.courant = one();
        else throw ParseError("model line " + std::to_string(line) + ": unknown key '" + key + "'", line, 0);
    }
    if (!first_trace_set) {
        // Centre the survey line on the section.
        const double span = m.trace_spacing_m * (m.trace_count - 1);
        m.first_trace_m = 0.5 * (m.width_m - span);
    }
    m.validate();
    return m;
}

ForwardModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file '" + path + "'");
    return parse_model(in);
}

void write_model(std::ostream& out, const ForwardModel& m) {
    out << std::setprecision(17);
    out << "width = " << m.width_m << "\ndepth = " << m.depth_m << "\ncell = " << m.cell_m << '\n';
    out << "background = " << m.background.eps_r << ' ' << m.background.sigma << '\n';
    for (const auto& b : m.blocks) {
        if (const auto* r = std::get_if<RectBlock>(&b))
            out << "rect = " << r->x0 << ' ' << r->z0 << ' ' << r->x1 << ' ' << r->z1 << ' ' << r->material.eps_r
                << ' ' << r->material.sigma << '\n';
        else {
            const auto& c = std::get<CircleBlock>(b);
            out << "circle = " << c.cx << ' ' << c.cz << ' ' << c.radius << ' ' << c.material.eps_r << ' '
                << c.material.sigma << '\n';
        }
    }
    out << "fc_mhz = " << m.fc_mhz << "\noffset = " << m.offset_m << "\ntraces = " << m.trace_count
        << "\ntrace_spacing = " << m.trace_spacing_m << "\nfirst_trace = " << m.first_trace_m
        << "\nantenna_z = " << m.antenna_z_m << "\nwindow_ns = " << m.time_window_ns << "\nsamples = " << m.samples
        << "\npml_cells = " << m.pml_cells << "\npml_order = " << m.pml_order << "\ncourant = " << m.courant << '\n';
}

}  // namespace gpr
