#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fmcw/errors.hpp"
#include "fmcw/sar.hpp"

// Output-SNR estimation and compression-gain bookkeeping.
//
// Output SNR is a peak-over-floor estimate: the strongest pixel (or profile
// bin) within one range cell of the true target over the mean power outside
// an exclusion disk. Numerically zero floors saturate at +120 dB.

namespace fmcw {

inline constexpr double snr_saturation_db = 120.0;

// Analytic pulse-compression gain 10*log10(W*T).
inline double analytic_gain_db(const ChirpParams& p) {
    return 10.0 * std::log10(p.bandwidth_hz * p.duration_s);
}

inline double range_cell_m(const ChirpParams& p) {
    return speed_of_light / (2.0 * p.bandwidth_hz);
}

// Image-domain output SNR around a known target position. The exclusion
// disk must leave at least a quarter of the pixels for the floor estimate.
inline double snr_out_db(const SarImage& img, double target_x_m,
                         double target_y_m, double exclusion_radius_m,
                         double peak_radius_m) {
    const auto& g = img.grid;
    const double peak_r = std::max({peak_radius_m, g.dx(), g.dy()});
    double peak_power = 0.0;
    double floor_sum = 0.0;
    std::size_t floor_n = 0;
    for (std::size_t j = 0; j < g.ny; ++j) {
        for (std::size_t i = 0; i < g.nx; ++i) {
            const double d = std::hypot(g.pixel_x(i) - target_x_m,
                                        g.pixel_y(j) - target_y_m);
            const double v = img.at(i, j);
            if (d <= peak_r) peak_power = std::max(peak_power, v * v);
            if (d > exclusion_radius_m) {
                floor_sum += v * v;
                ++floor_n;
            }
        }
    }
    if (floor_n * 4 < g.nx * g.ny)
        throw config_error(
            "snr_out_db: exclusion disk leaves fewer than 25% of pixels for "
            "the noise floor estimate");
    const double floor = floor_sum / static_cast<double>(floor_n);
    if (floor <= 0.0) return snr_saturation_db;
    const double snr = 10.0 * std::log10(peak_power / floor);
    return std::min(snr, snr_saturation_db);
}

// Profile-domain variant used for single-chirp compression-gain
// measurements: peak bin power within one range cell of the true range over
// the mean bin power outside exclusion_cells range cells.
inline double profile_snr_out_db(const RangeProfile& prof, double true_range_m,
                                 double cell_m, double exclusion_cells = 10.0) {
    double peak_power = 0.0;
    double floor_sum = 0.0;
    std::size_t floor_n = 0;
    for (std::size_t i = 0; i < prof.values.size(); ++i) {
        const double dr = std::abs(prof.range_axis_m[i] - true_range_m);
        const double pw = std::norm(prof.values[i]);
        if (dr <= cell_m) peak_power = std::max(peak_power, pw);
        if (dr > exclusion_cells * cell_m) {
            floor_sum += pw;
            ++floor_n;
        }
    }
    if (floor_n == 0)
        throw config_error("profile_snr_out_db: no bins left outside the exclusion");
    const double floor = floor_sum / static_cast<double>(floor_n);
    if (floor <= 0.0) return snr_saturation_db;
    return std::min(10.0 * std::log10(peak_power / floor), snr_saturation_db);
}

// Center coordinates of the argmax pixel; ties break to the lowest
// row-major index.
inline std::pair<double, double> peak_location(const SarImage& img) {
    if (img.values.empty())
        throw std::invalid_argument("peak_location: empty image");
    std::size_t best = 0;
    for (std::size_t idx = 1; idx < img.values.size(); ++idx)
        if (img.values[idx] > img.values[best]) best = idx;
    const std::size_t j = best / img.grid.nx;
    const std::size_t i = best % img.grid.nx;
    return {img.grid.pixel_x(i), img.grid.pixel_y(j)};
}

struct GainRow {
    double snr_in_db = 0.0;
    Architecture architecture = Architecture::stretch;
    double snr_out_db = 0.0;           // mean over trials
    double compression_gain_db = 0.0;  // snr_out_db - snr_in_db
    int trials = 0;
    double std_db = 0.0;
};

struct GainReport {
    std::vector<GainRow> rows;
};

}  // namespace fmcw
