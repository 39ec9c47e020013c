// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <unistd.h>

#include "gpr/error.hpp"

namespace gpr::io {
namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
    const U bits = std::bit_cast<U>(value);
    std::array<char, sizeof(T)> bytes{};
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(const unsigned char* p) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint16_t>>;
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(static_cast<U>(p[i]) << (8 * i));
    return std::bit_cast<T>(bits);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return in;
}

}  // namespace

void write_file_atomic(const std::string& path, const std::function<void(std::ostream&)>& write) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    try {
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
            write(out);
            out.flush();
            if (!out) throw IoError("write to '" + tmp.string() + "' failed");
        }
        std::filesystem::rename(tmp, target);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw;
    }
}

void write_radargram(const Radargram& r, std::ostream& out) {
    out.write("GPRD", 4);
    put_le<std::uint16_t>(out, kFormatVersion);
    put_le<std::uint16_t>(out, 0);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(r.trace_count()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(r.samples_per_trace()));
    put_le<double>(out, r.dt_ns());
    put_le<double>(out, r.dx_m());
    for (const auto& t : r.traces())
        for (double v : t.samples()) put_le<double>(out, v);
}

void write_radargram(const Radargram& r, const std::string& path) {
    write_file_atomic(path, [&](std::ostream& out) { write_radargram(r, out); });
}

RadargramFileHeader read_header(std::istream& in) {
    std::array<unsigned char, kHeaderSize> h{};
    in.read(reinterpret_cast<char*>(h.data()), h.size());
    if (in.gcount() != static_cast<std::streamsize>(h.size())) throw CorruptFile("gprd: truncated header");
    if (std::memcmp(h.data(), "GPRD", 4) != 0) throw CorruptFile("gprd: bad magic");
    RadargramFileHeader hdr;
    hdr.version = get_le<std::uint16_t>(h.data() + 4);
    if (hdr.version != kFormatVersion)
        throw UnsupportedVersion("gprd: unsupported format version " + std::to_string(hdr.version));
    hdr.trace_count = get_le<std::uint32_t>(h.data() + 8);
    hdr.samples_per_trace = get_le<std::uint32_t>(h.data() + 12);
    hdr.dt_ns = get_le<double>(h.data() + 16);
    hdr.dx_m = get_le<double>(h.data() + 24);
    return hdr;
}

Radargram read_radargram(std::istream& in) {
    const RadargramFileHeader hdr = read_header(in);
    std::vector<unsigned char> payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::uint64_t expected = std::uint64_t{hdr.trace_count} * hdr.samples_per_trace * 8;
    if (payload.size() != expected)
        throw CorruptFile("gprd: payload has " + std::to_string(payload.size()) + " bytes, header implies " +
                          std::to_string(expected));
    if (!(hdr.dx_m >= 0.0) || !std::isfinite(hdr.dx_m)) throw CorruptFile("gprd: invalid dx");
    if (hdr.trace_count == 0) return Radargram::empty_with(hdr.dt_ns, hdr.dx_m);

    std::vector<Trace> traces;
    traces.reserve(hdr.trace_count);
    const unsigned char* p = payload.data();
    try {
        for (std::uint32_t t = 0; t < hdr.trace_count; ++t) {
            std::vector<double> s(hdr.samples_per_trace);
            for (auto& v : s) {
                v = get_le<double>(p);
                p += 8;
            }
            traces.emplace_back(std::move(s), hdr.dt_ns);
        }
    } catch (const InvalidInput& e) {
        throw CorruptFile(std::string("gprd: ") + e.what());
    }
    return Radargram(std::move(traces), hdr.dx_m);
}

Radargram read_radargram(const std::string& path) {
    auto in = open_in(path);
    return read_radargram(in);
}

Radargram import_csv(std::istream& in, double dt_ns, double dx_m) {
    std::vector<std::vector<double>> columns;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<double> values;
        std::size_t start = 0;
        std::size_t col = 0;
        while (true) {
            ++col;
            const auto comma = line.find(',', start);
            std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            const auto b = cell.find_first_not_of(" \t");
            const auto e = cell.find_last_not_of(" \t");
            cell = b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1);
            char* end = nullptr;
            const double v = cell.empty() ? 0.0 : std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v))
                throw ParseError("csv row " + std::to_string(row) + ", column " + std::to_string(col) +
                                     ": '" + cell + "' is not a finite number",
                                 row, col);
            values.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (columns.empty()) columns.resize(values.size());
        if (values.size() != columns.size())
            throw ParseError("csv row " + std::to_string(row) + " has " + std::to_string(values.size()) +
                                 " columns, expected " + std::to_string(columns.size()),
                             row, 0);
        for (std::size_t c = 0; c < values.size(); ++c) columns[c].push_back(values[c]);
    }
    if (columns.empty()) throw ParseError("csv: no data rows", 0, 0);
    std::vector<Trace> traces;
    traces.reserve(columns.size());
    for (auto& c : columns) traces.emplace_back(std::move(c), dt_ns);
    return Radargram(std::move(traces), dx_m);
}

Radargram import_csv(const std::string& path, double dt_ns, double dx_m) {
    auto in = open_in(path);
    return import_csv(in, dt_ns, dx_m);
}

void export_csv(const Radargram& r, std::ostream& out) {
    out << std::setprecision(17);
    for (std::size_t i = 0; i < r.samples_per_trace(); ++i) {
        for (std::size_t t = 0; t < r.trace_count(); ++t) {
            if (t) out << ',';
            out << r[t][i];
        }
        out << '\n';
    }
}

void export_csv(const Radargram& r, const std::string& path) {
    write_file_atomic(path, [&](std::ostream& out) { export_csv(r, out); });
}

void render_bscan(const Radargram& r, std::ostream& out, double clip_percentile) {
    if (r.empty()) throw InvalidInput("render: radargram has no traces");
    if (!(clip_percentile >= 0.0 && clip_percentile <= 100.0))
        throw InvalidInput("render: clip percentile must lie in [0, 100]");
    const std::size_t w = r.trace_count();
    const std::size_t h = r.samples_per_trace();

    std::vector<double> mags;
    mags.reserve(w * h);
    for (const auto& t : r.traces())
        for (double v : t.samples()) mags.push_back(std::abs(v));
    std::sort(mags.begin(), mags.end());
    // Nearest-rank percentile.
    const double rank = std::ceil(clip_percentile / 100.0 * static_cast<double>(mags.size()));
    const auto pos = static_cast<std::size_t>(std::clamp(rank, 1.0, static_cast<double>(mags.size()))) - 1;
    double clip = mags[pos];
    if (clip == 0.0) clip = mags.back();

    out << "P5\n" << w << ' ' << h << "\n255\n";
    std::vector<unsigned char> row(w);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const double v = clip == 0.0 ? 0.0 : std::clamp(r[x][y] / clip, -1.0, 1.0);
            row[x] = static_cast<unsigned char>(std::lround(127.5 + 127.5 * v));
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
}

void render_bscan(const Radargram& r, const std::string& path, double clip_percentile) {
    write_file_atomic(path, [&](std::ostream& out) { render_bscan(r, out, clip_percentile); });
}

}  // namespace gpr::io
