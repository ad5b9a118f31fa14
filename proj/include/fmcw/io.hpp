#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "fmcw/errors.hpp"
#include "fmcw/metrics.hpp"
#include "fmcw/receivers.hpp"
#include "fmcw/sar.hpp"

namespace fmcw::io {

namespace detail {

inline std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw io_error("cannot open output file '" + path + "'");
    return f;
}

inline std::string fmt(double v, const char* spec = "%.9g") {
    char buf[40];
    std::snprintf(buf, sizeof(buf), spec, v);
    return std::string(buf);
}

}  // namespace detail

// range_m,real,imag,magnitude
inline void write_profile_csv(const std::string& path, const RangeProfile& prof) {
    auto f = detail::open_out(path);
    f << "range_m,real,imag,magnitude\n";
    for (std::size_t i = 0; i < prof.values.size(); ++i) {
        f << detail::fmt(prof.range_axis_m[i]) << ','
          << detail::fmt(prof.values[i].real()) << ','
          << detail::fmt(prof.values[i].imag()) << ','
          << detail::fmt(std::abs(prof.values[i])) << '\n';
    }
    if (!f) throw io_error("failed writing '" + path + "'");
}

// ny rows of nx comma-separated raw intensity values
inline void write_grid_csv(const std::string& path, const SarImage& img) {
    auto f = detail::open_out(path);
    for (std::size_t j = 0; j < img.grid.ny; ++j) {
        for (std::size_t i = 0; i < img.grid.nx; ++i) {
            if (i) f << ',';
            f << detail::fmt(img.at(i, j));
        }
        f << '\n';
    }
    if (!f) throw io_error("failed writing '" + path + "'");
}

// 16-bit binary PGM (P5, maxval 65535, big-endian), min-max normalized for
// display; quantitative work should read the CSV grid instead.
inline void write_pgm16(const std::string& path, const SarImage& img) {
    double lo = img.values.empty() ? 0.0 : img.values[0];
    double hi = lo;
    for (double v : img.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi - lo;
    auto f = detail::open_out(path, true);
    f << "P5\n" << img.grid.nx << ' ' << img.grid.ny << "\n65535\n";
    for (std::size_t j = 0; j < img.grid.ny; ++j) {
        for (std::size_t i = 0; i < img.grid.nx; ++i) {
            const double v = img.at(i, j);
            const double u = span > 0.0 ? (v - lo) / span : 0.0;
            const auto q = static_cast<std::uint16_t>(std::lround(u * 65535.0));
            const unsigned char bytes[2] = {
                static_cast<unsigned char>(q >> 8),
                static_cast<unsigned char>(q & 0xff)};
            f.write(reinterpret_cast<const char*>(bytes), 2);
        }
    }
    if (!f) throw io_error("failed writing '" + path + "'");
}

// plain key = value sidecar
inline void write_metadata(const std::string& path,
                           const std::vector<std::pair<std::string, std::string>>& kv) {
    auto f = detail::open_out(path);
    for (const auto& [k, v] : kv) f << k << " = " << v << '\n';
    if (!f) throw io_error("failed writing '" + path + "'");
}

// snr_in_db,architecture,snr_out_db,gain_db,trials,std_db with 6 significant
// digits, one row per (snr_in, architecture)
inline void write_gain_csv(const std::string& path, const GainReport& report) {
    auto f = detail::open_out(path);
    f << "snr_in_db,architecture,snr_out_db,gain_db,trials,std_db\n";
    for (const auto& r : report.rows) {
        f << detail::fmt(r.snr_in_db, "%.6g") << ','
          << to_string(r.architecture) << ','
          << detail::fmt(r.snr_out_db, "%.6g") << ','
          << detail::fmt(r.compression_gain_db, "%.6g") << ','
          << r.trials << ','
          << detail::fmt(r.std_db, "%.6g") << '\n';
    }
    if (!f) throw io_error("failed writing '" + path + "'");
}

}  // namespace fmcw::io
