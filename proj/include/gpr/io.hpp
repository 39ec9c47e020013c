// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include "gpr/signal.hpp"

namespace gpr::io {

// .gprd layout, all little-endian, 32-byte header then trace-major float64 samples:
//
//   offset  size  field
//   0       4     magic "GPRD"
//   4       2     format version (uint16, currently 1)
//   6       2     reserved, zero
//   8       4     trace count (uint32)
//   12      4     samples per trace (uint32)
//   16      8     dt in ns (float64)
//   24      8     dx in m (float64)
inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderSize = 32;

struct RadargramFileHeader {
    std::uint16_t version = kFormatVersion;
    std::uint32_t trace_count = 0;
    std::uint32_t samples_per_trace = 0;
    double dt_ns = 0.0;
    double dx_m = 0.0;
};

/// Writes the file atomically (temporary file, then rename).
void write_radargram(const Radargram& r, const std::string& path);
void write_radargram(const Radargram& r, std::ostream& out);

/// Throws CorruptFile on a bad magic, short header, payload size mismatch or
/// non-finite samples, and UnsupportedVersion for an unknown version.
Radargram read_radargram(const std::string& path);
Radargram read_radargram(std::istream& in);
RadargramFileHeader read_header(std::istream& in);

/// Rectangular numeric CSV, one row per time sample and one column per trace.
/// Throws ParseError naming the 1-based row (and column for bad cells).
Radargram import_csv(const std::string& path, double dt_ns, double dx_m);
Radargram import_csv(std::istream& in, double dt_ns, double dx_m);
void export_csv(const Radargram& r, const std::string& path);
void export_csv(const Radargram& r, std::ostream& out);

/// Binary PGM (P5): width = trace count, height = samples, time increasing downward.
/// Amplitudes are clipped symmetrically at the clip_percentile of |a| and mapped
/// linearly onto 0..255, zero at 128. A zero percentile falls back to max |a|;
/// an all-zero section renders uniformly mid-gray.
void render_bscan(const Radargram& r, const std::string& path, double clip_percentile = 99.0);
void render_bscan(const Radargram& r, std::ostream& out, double clip_percentile = 99.0);

/// Runs `write` against a temporary sibling of `path` and renames it into place
/// on success; on failure the temporary is removed and the exception propagates.
void write_file_atomic(const std::string& path, const std::function<void(std::ostream&)>& write);

}  // namespace gpr::io
